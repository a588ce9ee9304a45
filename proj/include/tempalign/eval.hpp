#pragma once

#include <string>
#include <vector>

#include "tempalign/temporal_graph.hpp"

namespace tempalign {

enum class PairLabel { TP, FP, TN, FN };

struct ScoredPair {
    std::string g_class;
    std::string h_class;
    double score = 0.0;
};

// TP: score >= k and same class; FP: score >= k, different class;
// FN: score < k, same class; TN: otherwise.
PairLabel label(const ScoredPair& pair, double k);

struct PrRoc {
    double aupr = 0.0;
    double auroc = 0.0;
};

// Threshold sweep k in {0, k_step, ..., 1} plus one sentinel above the top
// score, rectangle sums with absolute consecutive differences:
//   AUPR  = sum Pr(k_i)  * |Rec(k_i) - Rec(k_{i-1})|
//   AUROC = sum TPR(k_i) * |FPR(k_i) - FPR(k_{i-1})|
// Conventions: Pr = 1 when nothing is predicted positive, FPR = 0 when there
// are no negatives, Rec = 0 when there are no positives.
PrRoc pr_roc(const std::vector<ScoredPair>& pairs, double k_step = 0.01);

// Fraction of nodes mapped to their ground-truth counterparts.
double node_correctness(const std::vector<NodeId>& mapping,
                        const std::vector<NodeId>& truth);

struct NoiseCurve {
    std::vector<double> levels;    // noise fractions, ascending
    std::vector<double> produced;  // S_p per level
    std::vector<double> ideal;     // S_i per level
};

// Sum over levels of |S_p - S_i| / max(S_p, S_i); a level where both are
// zero contributes nothing.
double dis(const NoiseCurve& curve);

// Relative gains in percent; positive means the first argument wins.
double gain_higher_better(double s_g, double s_d);
double gain_lower_better(double s_g, double s_d);

}  // namespace tempalign
