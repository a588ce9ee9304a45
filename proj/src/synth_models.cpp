#include "tempalign/synth_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace tempalign {

std::string to_string(GraphModel model) {
    switch (model) {
        case GraphModel::random: return "random";
        case GraphModel::scale_free: return "scalefree";
        case GraphModel::small_world: return "smallworld";
        case GraphModel::geo_gd: return "geogd";
        case GraphModel::scale_free_gd: return "scalefreegd";
    }
    return "?";
}

GraphModel model_from_string(const std::string& s) {
    if (s == "random") return GraphModel::random;
    if (s == "scalefree") return GraphModel::scale_free;
    if (s == "smallworld") return GraphModel::small_world;
    if (s == "geogd") return GraphModel::geo_gd;
    if (s == "scalefreegd") return GraphModel::scale_free_gd;
    throw std::invalid_argument("unknown model '" + s + "'");
}

namespace {

bool exponential_arrival(GraphModel model) {
    return model == GraphModel::scale_free || model == GraphModel::scale_free_gd;
}

}  // namespace

int node_count_at(const ModelSpec& spec, int t) {
    if (t < 1 || t > spec.snapshots)
        throw std::out_of_range("snapshot index out of range");
    if (exponential_arrival(spec.model)) {
        const double n = spec.n_start * std::exp((t - 1) / 10.0);
        return static_cast<int>(std::llround(std::min<double>(spec.n_end, n)));
    }
    if (spec.snapshots == 1) return spec.n_start;
    const double slope =
        static_cast<double>(spec.n_end - spec.n_start) / (spec.snapshots - 1);
    return static_cast<int>(std::llround(slope * (t - 1) + spec.n_start));
}

long edge_quota(const ModelSpec& spec, int n_nodes) {
    return std::lround(spec.density * n_nodes * (n_nodes - 1) / 2.0);
}

namespace {

std::uint64_t ekey(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

// Undirected edge set with O(1) membership, uniform sampling and removal,
// plus degree and adjacency bookkeeping.
struct EdgeSet {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::unordered_map<std::uint64_t, std::size_t> index;
    std::vector<int> degree;
    std::vector<std::vector<NodeId>> adj;

    void ensure(int n) {
        if (static_cast<int>(degree.size()) < n) {
            degree.resize(n, 0);
            adj.resize(n);
        }
    }
    bool contains(NodeId u, NodeId v) const { return index.count(ekey(u, v)) > 0; }
    std::size_t size() const { return edges.size(); }

    bool add(NodeId u, NodeId v) {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        ensure(v + 1);
        if (!index.try_emplace(ekey(u, v), edges.size()).second) return false;
        edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
        adj[u].push_back(v);
        adj[v].push_back(u);
        return true;
    }

    bool remove(NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        auto it = index.find(ekey(u, v));
        if (it == index.end()) return false;
        const std::size_t pos = it->second;
        index.erase(it);
        --degree[u];
        --degree[v];
        auto drop = [&](NodeId a, NodeId b) {
            auto& nb = adj[a];
            nb.erase(std::find(nb.begin(), nb.end(), b));
        };
        drop(u, v);
        drop(v, u);
        if (pos + 1 != edges.size()) {
            edges[pos] = edges.back();
            index[ekey(edges[pos].first, edges[pos].second)] = pos;
        }
        edges.pop_back();
        return true;
    }

    void remove_random(Rng& rng) {
        const auto pos = static_cast<std::size_t>(rng.below(edges.size()));
        auto [u, v] = edges[pos];
        remove(u, v);
    }
};

void add_random_edges(EdgeSet& es, int n_nodes, long target, Rng& rng) {
    while (static_cast<long>(es.size()) < target) {
        const NodeId u = rng.below_int(n_nodes);
        const NodeId v = rng.below_int(n_nodes);
        if (u == v) continue;
        es.add(u, v);
    }
}

void trim_to_quota(EdgeSet& es, int n_nodes, long quota, Rng& rng) {
    while (static_cast<long>(es.size()) > quota) es.remove_random(rng);
    add_random_edges(es, n_nodes, quota, rng);
}

using SnapshotEdges = std::vector<std::vector<std::pair<NodeId, NodeId>>>;

SnapshotEdges gen_random(const ModelSpec& spec, Rng& rng) {
    SnapshotEdges out(spec.snapshots);
    EdgeSet es;
    for (int t = 1; t <= spec.snapshots; ++t) {
        const int n = node_count_at(spec, t);
        es.ensure(n);
        add_random_edges(es, n, edge_quota(spec, n), rng);
        out[t - 1] = es.edges;
    }
    return out;
}

SnapshotEdges gen_scale_free(const ModelSpec& spec, Rng& rng) {
    SnapshotEdges out(spec.snapshots);
    EdgeSet es;
    for (int t = 1; t <= spec.snapshots; ++t) {
        const int n = node_count_at(spec, t);
        es.ensure(n);
        const long quota = edge_quota(spec, n);
        long rejected = 0;
        const long give_up = 50 * std::max(quota, 1L);
        while (static_cast<long>(es.size()) < quota) {
            const NodeId u = rng.below_int(n);
            const NodeId v = rng.below_int(n);
            if (u == v) continue;
            const double r = rng.uniform();
            const bool accept =
                es.size() == 0 || rejected >= give_up ||
                static_cast<double>(std::max(es.degree[u], es.degree[v])) /
                        static_cast<double>(es.size()) > r;
            if (!accept) {
                ++rejected;
                continue;
            }
            es.add(u, v);
        }
        out[t - 1] = es.edges;
    }
    return out;
}

SnapshotEdges gen_small_world(const ModelSpec& spec, Rng& rng) {
    SnapshotEdges out(spec.snapshots);
    EdgeSet es;
    for (int t = 1; t <= spec.snapshots; ++t) {
        const int n = node_count_at(spec, t);
        es.ensure(n);
        const long quota = edge_quota(spec, n);
        for (auto [u, v] : small_world_ring(n, quota)) es.add(u, v);
        trim_to_quota(es, n, quota, rng);
        // rewire each surviving edge with probability beta
        auto snapshot = es.edges;
        std::sort(snapshot.begin(), snapshot.end());
        for (auto [u, v] : snapshot) {
            if (!es.contains(u, v)) continue;
            if (!rng.bernoulli(spec.beta)) continue;
            for (int attempt = 0; attempt < 100; ++attempt) {
                const NodeId w = rng.below_int(n);
                if (w == u || es.contains(u, w)) continue;
                es.remove(u, v);
                es.add(u, w);
                break;
            }
        }
        out[t - 1] = es.edges;
    }
    return out;
}

SnapshotEdges gen_geo_gd(const ModelSpec& spec, Rng& rng) {
    SnapshotEdges out(spec.snapshots);
    std::vector<GeoNode> layout;
    for (int t = 1; t <= spec.snapshots; ++t) {
        const int n = node_count_at(spec, t);
        geo_gd_place(layout, n - static_cast<int>(layout.size()), spec, rng);
        const long quota = edge_quota(spec, n);

        struct Pair {
            double d2;
            NodeId u, v;
        };
        std::vector<Pair> pairs;
        pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) {
                const double dx = layout[u].x - layout[v].x;
                const double dy = layout[u].y - layout[v].y;
                pairs.push_back({dx * dx + dy * dy, u, v});
            }
        const auto cmp = [](const Pair& a, const Pair& b) {
            if (a.d2 != b.d2) return a.d2 < b.d2;
            if (a.u != b.u) return a.u < b.u;
            return a.v < b.v;
        };
        const std::size_t take = std::min<std::size_t>(quota, pairs.size());
        std::partial_sort(pairs.begin(), pairs.begin() + take, pairs.end(), cmp);
        auto& edges = out[t - 1];
        for (std::size_t i = 0; i < take; ++i) edges.emplace_back(pairs[i].u, pairs[i].v);
    }
    return out;
}

SnapshotEdges gen_scale_free_gd(const ModelSpec& spec, Rng& rng) {
    SnapshotEdges out(spec.snapshots);
    EdgeSet es;
    int grown = 0;
    for (int t = 1; t <= spec.snapshots; ++t) {
        const int n = node_count_at(spec, t);
        es.ensure(n);
        while (grown < n) {
            const NodeId c = grown++;
            if (c == 0) continue;
            if (c == 1) {
                es.add(0, 1);
                continue;
            }
            const NodeId f = rng.below_int(c);
            if (rng.bernoulli(spec.p_child)) es.add(c, f);
            auto father_nb = es.adj[f];
            std::sort(father_nb.begin(), father_nb.end());
            for (NodeId x : father_nb) {
                if (x == c) continue;
                if (rng.bernoulli(spec.q_keep)) {
                    es.add(c, x);
                } else if (rng.bernoulli(0.5)) {
                    // child steals the connection from the father
                    es.remove(f, x);
                    es.add(c, x);
                }
            }
        }
        const long quota = edge_quota(spec, n);
        while (static_cast<long>(es.size()) > quota) es.remove_random(rng);
        // deficit: grow preferentially by extending an endpoint of a random
        // existing edge, falling back to uniform pairs
        long attempts = 0;
        const long give_up = 50 * std::max(quota, 1L);
        while (static_cast<long>(es.size()) < quota) {
            if (es.size() == 0 || attempts >= give_up) {
                add_random_edges(es, n, quota, rng);
                break;
            }
            ++attempts;
            const auto& e = es.edges[static_cast<std::size_t>(rng.below(es.size()))];
            const NodeId a = rng.bernoulli(0.5) ? e.first : e.second;
            const NodeId b = rng.below_int(n);
            if (a == b) continue;
            es.add(a, b);
        }
        out[t - 1] = es.edges;
    }
    return out;
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> small_world_ring(int n_nodes, long quota) {
    std::vector<std::pair<NodeId, NodeId>> ring;
    if (n_nodes < 2) return ring;
    const int k_side = std::max(1L, std::lround(static_cast<double>(quota) / n_nodes));
    std::unordered_map<std::uint64_t, bool> seen;
    for (NodeId i = 0; i < n_nodes; ++i) {
        for (int s = 1; s <= k_side; ++s) {
            const NodeId j = static_cast<NodeId>((i + s) % n_nodes);
            if (j == i) continue;
            if (seen.try_emplace(ekey(i, j), true).second)
                ring.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    return ring;
}

void geo_gd_place(std::vector<GeoNode>& layout, int count, const ModelSpec& spec, Rng& rng) {
    const double r_seed = 0.499 * std::sqrt(spec.epsilon);
    const double r_near = std::sqrt(spec.epsilon);
    const double r_far = std::sqrt(10.0 * spec.epsilon);
    static constexpr double tau = 2.0 * std::numbers::pi;

    double cx = 0.5, cy = 0.5;
    if (layout.empty() && count > 0) {
        cx = rng.uniform();
        cy = rng.uniform();
    }
    for (int i = 0; i < count; ++i) {
        GeoNode node;
        if (static_cast<int>(layout.size()) < spec.geo_seeds) {
            const double ang = tau * rng.uniform();
            const double r = r_seed * std::sqrt(rng.uniform());
            node.x = cx + r * std::cos(ang);
            node.y = cy + r * std::sin(ang);
        } else {
            const NodeId f = rng.below_int(static_cast<int>(layout.size()));
            node.father = f;
            const double ang = tau * rng.uniform();
            double r;
            if (rng.bernoulli(spec.p_cut)) {
                node.cut_off = true;
                r = r_near + (1.0 - rng.uniform()) * (r_far - r_near);
            } else {
                r = r_near * std::sqrt(rng.uniform());
            }
            node.x = layout[f].x + r * std::cos(ang);
            node.y = layout[f].y + r * std::sin(ang);
        }
        layout.push_back(node);
    }
}

TemporalNetwork generate(const ModelSpec& spec) {
    if (spec.n_start < 2 || spec.n_start > spec.n_end)
        throw std::invalid_argument("generate: need 2 <= n_start <= n_end");
    if (!(spec.density > 0.0) || spec.density > 1.0)
        throw std::invalid_argument("generate: density must be in (0,1]");
    if (spec.snapshots < 1)
        throw std::invalid_argument("generate: need at least one snapshot");

    Rng rng(spec.seed);
    SnapshotEdges edges;
    switch (spec.model) {
        case GraphModel::random: edges = gen_random(spec, rng); break;
        case GraphModel::scale_free: edges = gen_scale_free(spec, rng); break;
        case GraphModel::small_world: edges = gen_small_world(spec, rng); break;
        case GraphModel::geo_gd: edges = gen_geo_gd(spec, rng); break;
        case GraphModel::scale_free_gd: edges = gen_scale_free_gd(spec, rng); break;
    }
    const int n_total = node_count_at(spec, spec.snapshots);
    return from_snapshot_edges(n_total, false, edges);
}

std::vector<LabeledNetwork> generate_suite(const ModelSpec& base,
                                           int instances_per_model,
                                           std::uint64_t base_seed) {
    if (instances_per_model < 1)
        throw std::invalid_argument("generate_suite: need at least one instance");
    static constexpr GraphModel kModels[] = {
        GraphModel::random, GraphModel::scale_free, GraphModel::small_world,
        GraphModel::geo_gd, GraphModel::scale_free_gd};
    std::vector<LabeledNetwork> suite;
    for (int m = 0; m < 5; ++m) {
        for (int i = 0; i < instances_per_model; ++i) {
            ModelSpec spec = base;
            spec.model = kModels[m];
            spec.seed = Rng::stream_seed(base_seed, static_cast<std::uint64_t>(m) * 100000 + i);
            suite.push_back({spec.model, i, generate(spec)});
        }
    }
    return suite;
}

}  // namespace tempalign
