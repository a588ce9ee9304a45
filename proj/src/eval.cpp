#include "tempalign/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempalign {

PairLabel label(const ScoredPair& pair, double k) {
    const bool positive = pair.score >= k;
    const bool same = pair.g_class == pair.h_class;
    if (positive) return same ? PairLabel::TP : PairLabel::FP;
    return same ? PairLabel::FN : PairLabel::TN;
}

PrRoc pr_roc(const std::vector<ScoredPair>& pairs, double k_step) {
    if (pairs.empty()) throw std::invalid_argument("pr_roc: no scored pairs");
    if (!(k_step > 0.0) || k_step > 1.0)
        throw std::invalid_argument("pr_roc: k_step must be in (0,1]");

    const int steps = static_cast<int>(std::lround(1.0 / k_step));
    auto counts_at = [&](double k) {
        long tp = 0, fp = 0, tn = 0, fn = 0;
        for (const auto& pair : pairs) {
            switch (label(pair, k)) {
                case PairLabel::TP: ++tp; break;
                case PairLabel::FP: ++fp; break;
                case PairLabel::TN: ++tn; break;
                case PairLabel::FN: ++fn; break;
            }
        }
        struct Point {
            double pr, rec, fpr;
        } pt{};
        pt.pr = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 1.0;
        pt.rec = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        pt.fpr = fp + tn > 0 ? static_cast<double>(fp) / (fp + tn) : 0.0;
        return pt;
    };

    PrRoc result;
    auto prev = counts_at(0.0);
    for (int i = 1; i <= steps + 1; ++i) {
        // the final threshold sits above every admissible score so that
        // recall always sweeps down to zero
        const double k = i <= steps ? static_cast<double>(i) / steps : 1.0 + k_step;
        const auto cur = counts_at(k);
        result.aupr += cur.pr * std::abs(cur.rec - prev.rec);
        result.auroc += cur.rec * std::abs(cur.fpr - prev.fpr);
        prev = cur;
    }
    return result;
}

double node_correctness(const std::vector<NodeId>& mapping,
                        const std::vector<NodeId>& truth) {
    if (mapping.size() != truth.size())
        throw std::invalid_argument("node_correctness: domain mismatch");
    if (mapping.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < mapping.size(); ++i)
        if (mapping[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(mapping.size());
}

double dis(const NoiseCurve& curve) {
    if (curve.produced.size() != curve.ideal.size() ||
        curve.levels.size() != curve.produced.size())
        throw std::invalid_argument("dis: curve arrays must have equal length");
    double total = 0.0;
    for (std::size_t i = 0; i < curve.produced.size(); ++i) {
        const double hi = std::max(curve.produced[i], curve.ideal[i]);
        if (hi <= 0.0) continue;
        total += std::abs(curve.produced[i] - curve.ideal[i]) / hi;
    }
    return total;
}

double gain_higher_better(double s_g, double s_d) {
    const double lo = std::min(s_g, s_d);
    if (lo <= 0.0) throw std::invalid_argument("gain: min score must be positive");
    return (s_g - s_d) / lo * 100.0;
}

double gain_lower_better(double s_g, double s_d) {
    const double lo = std::min(s_g, s_d);
    if (lo <= 0.0) throw std::invalid_argument("gain: min score must be positive");
    return (s_d - s_g) / lo * 100.0;
}

}  // namespace tempalign
