#pragma once

// Shared test fixtures and independent oracles. Everything here recomputes
// results from first principles so library paths are checked against a
// second route, not against themselves.

#include <unistd.h>

#include <array>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "tempalign/census.hpp"
#include "tempalign/eval.hpp"
#include "tempalign/rng.hpp"
#include "tempalign/temporal_graph.hpp"

namespace testutil {

using namespace tempalign;

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("tempalign_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

inline Snapshot make_snapshot(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                              bool directed = false, int t = 1) {
    Snapshot s;
    s.t = t;
    s.directed = directed;
    s.out.resize(n);
    if (directed) s.in.resize(n);
    s.und.resize(n);
    for (auto [u, v] : edges) {
        s.out[u].push_back(v);
        if (directed)
            s.in[v].push_back(u);
        else
            s.out[v].push_back(u);
        s.und[u].push_back(v);
        s.und[v].push_back(u);
    }
    auto tidy = [](std::vector<std::vector<NodeId>>& adj) {
        for (auto& nb : adj) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
    };
    tidy(s.out);
    tidy(s.in);
    tidy(s.und);
    return s;
}

inline Snapshot random_snapshot(Rng& rng, int n, double p, bool directed) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = directed ? 0 : u + 1; v < n; ++v) {
            if (u == v) continue;
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
        }
    return make_snapshot(n, edges, directed);
}

inline TemporalNetwork random_temporal_network(Rng& rng, int n, int T, double p,
                                               bool directed) {
    std::vector<Event> events;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = directed ? 0 : u + 1; v < n; ++v) {
            if (u == v) continue;
            for (int t = 1; t <= T; ++t) {
                if (!rng.bernoulli(p)) continue;
                const int len = 1 + static_cast<int>(rng.below(2));
                events.push_back({u, v, t, std::min(T, t + len - 1)});
            }
        }
    return TemporalNetwork(n, T, directed, std::move(events));
}

// ---- GoT oracle: censuses + global sort + consecutive same-node-set pairs.
using GotCells = std::map<std::tuple<NodeId, int, int, int>, long long>;

inline GotCells got_oracle(const TemporalNetwork& net, const std::vector<int>& ks,
                           Mode mode, bool strict = false) {
    GotCells cells;
    for (int k : ks) {
        const OrbitCatalog catalog = OrbitCatalog::build(k, mode);
        std::vector<OrbitOccurrence> all;
        for (int t = 1; t <= net.snapshot_count(); ++t) {
            auto occs = brute_force_census(net.snapshot_at(t), catalog);
            all.insert(all.end(), occs.begin(), occs.end());
        }
        std::sort(all.begin(), all.end(), [](const OrbitOccurrence& a, const OrbitOccurrence& b) {
            if (a.nodes != b.nodes) return a.nodes < b.nodes;
            return a.t < b.t;
        });
        for (std::size_t i = 1; i < all.size(); ++i) {
            if (all[i - 1].nodes != all[i].nodes) continue;
            if (strict && all[i - 1].t + 1 != all[i].t) continue;
            for (int pos = 0; pos < k; ++pos)
                cells[{all[i].nodes[pos], k, all[i - 1].orbits[pos], all[i].orbits[pos]}]++;
        }
    }
    return cells;
}

// ---- classifier-curve oracle over the distinct score thresholds.
inline PrRoc oracle_pr_roc(const std::vector<ScoredPair>& pairs) {
    std::set<double> grid{0.0};
    double top = 0.0;
    for (const auto& p : pairs) {
        grid.insert(p.score);
        top = std::max(top, p.score);
    }
    grid.insert(top + 1.0);  // recall must reach zero
    auto point = [&](double k) {
        long tp = 0, fp = 0, tn = 0, fn = 0;
        for (const auto& p : pairs) {
            const bool pos = p.score >= k;
            const bool same = p.g_class == p.h_class;
            if (pos && same) ++tp;
            else if (pos) ++fp;
            else if (same) ++fn;
            else ++tn;
        }
        const double pr = tp + fp > 0 ? double(tp) / (tp + fp) : 1.0;
        const double rec = tp + fn > 0 ? double(tp) / (tp + fn) : 0.0;
        const double fpr = fp + tn > 0 ? double(fp) / (fp + tn) : 0.0;
        return std::array<double, 3>{pr, rec, fpr};
    };
    PrRoc out;
    auto it = grid.begin();
    auto prev = point(*it);
    for (++it; it != grid.end(); ++it) {
        // evaluate just above the previous threshold so the step change is
        // attributed like a fine ascending sweep would
        const auto cur = point(*it);
        out.aupr += cur[0] * std::abs(cur[1] - prev[1]);
        out.auroc += cur[1] * std::abs(cur[2] - prev[2]);
        prev = cur;
    }
    return out;
}

inline std::set<std::pair<NodeId, NodeId>> snapshot_edge_set(const Snapshot& s) {
    std::set<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < s.n_nodes(); ++u)
        for (NodeId v : s.out[u]) {
            if (s.directed) edges.insert({u, v});
            else edges.insert({std::min(u, v), std::max(u, v)});
        }
    return edges;
}

}  // namespace testutil
