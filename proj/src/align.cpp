#include "tempalign/align.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace tempalign {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

struct IntervalList {
    std::vector<std::pair<int, int>> spans;
};

// H events grouped by (ordered or normalized) node pair.
std::unordered_map<std::uint64_t, IntervalList> pair_intervals(const TemporalNetwork& net) {
    std::unordered_map<std::uint64_t, IntervalList> map;
    for (const auto& e : net.events())
        map[pair_key(e.u, e.v)].spans.emplace_back(e.start, e.end);
    return map;
}

double overlap_weighted(int s1, int f1, const IntervalList& others, double sim_weight) {
    double mass = 0.0;
    for (auto [s2, f2] : others.spans) {
        const int inter = std::min(f1, f2) - std::max(s1, s2) + 1;
        if (inter <= 0) continue;
        const int uni = std::max(f1, f2) - std::min(s1, s2) + 1;
        mass += static_cast<double>(inter) * inter / uni * sim_weight;
    }
    return mass;
}

}  // namespace

double score_node_conservation(const std::vector<NodeId>& mapping,
                               const SimilarityMatrix& sim) {
    if (mapping.empty()) return 0.0;
    double sum = 0.0;
    for (NodeId g = 0; g < static_cast<NodeId>(mapping.size()); ++g)
        sum += sim.at(g, mapping[g]);
    return sum / static_cast<double>(mapping.size());
}

double score_edge_conservation(const std::vector<NodeId>& mapping,
                               const TemporalNetwork& g, const TemporalNetwork& h,
                               const SimilarityMatrix& sim) {
    const auto h_pairs = pair_intervals(h);
    const bool directed = g.directed();
    double mass = 0.0;
    for (const auto& e : g.events()) {
        NodeId a = mapping[e.u], b = mapping[e.v];
        if (a < 0 || b < 0) continue;
        double w = (sim.at(e.u, a) + sim.at(e.v, b)) / 2.0;
        if (!directed && a > b) std::swap(a, b);
        auto it = h_pairs.find(pair_key(a, b));
        if (it != h_pairs.end()) mass += overlap_weighted(e.start, e.end, it->second, w);
    }
    const double denom = static_cast<double>(
        std::min(g.total_event_duration(), h.total_event_duration()));
    if (denom <= 0.0) return 0.0;
    return std::clamp(mass / denom, 0.0, 1.0);
}

ObjectiveScore score_alignment(const std::vector<NodeId>& mapping,
                               const TemporalNetwork& g, const TemporalNetwork& h,
                               const SimilarityMatrix& sim, double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("alpha must be in [0,1]");
    ObjectiveScore score;
    score.s_n = score_node_conservation(mapping, sim);
    score.s_e = score_edge_conservation(mapping, g, h, sim);
    score.total = alpha * score.s_e + (1.0 - alpha) * score.s_n;
    return score;
}

namespace {

struct Candidate {
    double score;
    NodeId g, h;
};
struct CandidateLess {
    bool operator()(const Candidate& a, const Candidate& b) const {
        if (a.score != b.score) return a.score < b.score;
        if (a.g != b.g) return a.g > b.g;
        return a.h > b.h;
    }
};

struct IncidentEvent {
    NodeId other;
    int start, end;
    bool source;  // true when the event leaves this node (directed only)
};

}  // namespace

Alignment align(const TemporalNetwork& g, const TemporalNetwork& h,
                const SimilarityMatrix& sim, double alpha, std::uint64_t /*seed*/) {
    const int n_g = g.n_nodes();
    const int n_h = h.n_nodes();
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("align: alpha must be in [0,1]");
    if (n_g > n_h)
        throw std::invalid_argument("align: G must not be larger than H");
    if (sim.n_g != n_g || sim.n_h != n_h)
        throw std::invalid_argument("align: similarity matrix dimensions mismatch");
    if (g.directed() != h.directed())
        throw std::invalid_argument("align: directedness mismatch");
    const bool directed = g.directed();

    const auto adj_g = g.union_adjacency();
    const auto adj_h = h.union_adjacency();
    const auto h_pairs = pair_intervals(h);

    std::vector<std::vector<IncidentEvent>> incident(n_g);
    for (const auto& e : g.events()) {
        incident[e.u].push_back({e.v, e.start, e.end, true});
        incident[e.v].push_back({e.u, e.start, e.end, false});
    }
    const double denom = static_cast<double>(
        std::min(g.total_event_duration(), h.total_event_duration()));

    std::vector<NodeId> mapping(n_g, -1);
    std::vector<std::uint8_t> used(n_h, 0);

    auto delta_se = [&](NodeId gn, NodeId hn) -> double {
        if (denom <= 0.0) return 0.0;
        double mass = 0.0;
        for (const auto& ev : incident[gn]) {
            const NodeId img = mapping[ev.other];
            if (img < 0) continue;
            NodeId a = hn, b = img;
            if (directed && !ev.source) std::swap(a, b);
            if (!directed && a > b) std::swap(a, b);
            auto it = h_pairs.find(pair_key(a, b));
            if (it == h_pairs.end()) continue;
            const double w = (sim.at(gn, hn) + sim.at(ev.other, img)) / 2.0;
            mass += overlap_weighted(ev.start, ev.end, it->second, w);
        }
        return mass / denom;
    };
    auto frontier_score = [&](NodeId gn, NodeId hn) {
        return alpha * delta_se(gn, hn) + (1.0 - alpha) * sim.at(gn, hn);
    };

    std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> heap;

    auto commit = [&](NodeId gn, NodeId hn) {
        mapping[gn] = hn;
        used[hn] = 1;
        for (NodeId g2 : adj_g[gn]) {
            if (mapping[g2] >= 0) continue;
            for (NodeId h2 : adj_h[hn]) {
                if (used[h2]) continue;
                heap.push({frontier_score(g2, h2), g2, h2});
            }
        }
    };

    auto best_by_similarity = [&]() -> std::pair<NodeId, NodeId> {
        double best = -1.0;
        NodeId bg = -1, bh = -1;
        for (NodeId gn = 0; gn < n_g; ++gn) {
            if (mapping[gn] >= 0) continue;
            for (NodeId hn = 0; hn < n_h; ++hn) {
                if (used[hn]) continue;
                const double s = sim.at(gn, hn);
                if (s > best) {
                    best = s;
                    bg = gn;
                    bh = hn;
                }
            }
        }
        return {bg, bh};
    };

    int aligned = 0;
    while (aligned < n_g) {
        NodeId gn = -1, hn = -1;
        while (!heap.empty()) {
            const Candidate top = heap.top();
            heap.pop();
            if (mapping[top.g] >= 0 || used[top.h]) continue;
            gn = top.g;
            hn = top.h;
            break;
        }
        if (gn < 0) {
            auto [sg, sh] = best_by_similarity();
            gn = sg;
            hn = sh;
        }
        commit(gn, hn);
        ++aligned;
    }

    Alignment result;
    result.mapping = std::move(mapping);
    result.alpha = alpha;
    return result;
}

ObjectiveScore ideal_score(const TemporalNetwork& g, const TemporalNetwork& h,
                           const std::vector<NodeId>& truth_mapping,
                           const SimilarityMatrix& sim, double alpha) {
    if (static_cast<int>(truth_mapping.size()) != g.n_nodes())
        throw std::invalid_argument("ideal_score: mapping size mismatch");
    return score_alignment(truth_mapping, g, h, sim, alpha);
}

void save_alignment(const std::string& path, const Alignment& aln,
                    const ObjectiveScore& score, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    if (!header.empty()) out << header;
    for (NodeId g = 0; g < static_cast<NodeId>(aln.mapping.size()); ++g)
        out << g << "\t" << aln.mapping[g] << "\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# s_n=%.9f s_e=%.9f total=%.9f\n",
                  score.s_n, score.s_e, score.total);
    out << buf;
}

std::vector<NodeId> load_alignment(const std::string& path, int n_g) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::vector<NodeId> mapping(n_g, -1);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long u, v;
        if (!(ls >> u >> v))
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected '<u> <v>'");
        if (u < 0 || u >= n_g)
            throw ParseError(path + ":" + std::to_string(line_no) + ": node out of range");
        mapping[u] = static_cast<NodeId>(v);
    }
    return mapping;
}

}  // namespace tempalign
