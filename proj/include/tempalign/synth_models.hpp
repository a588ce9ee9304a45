#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempalign/rng.hpp"
#include "tempalign/temporal_graph.hpp"

namespace tempalign {

enum class GraphModel { random, scale_free, small_world, geo_gd, scale_free_gd };

std::string to_string(GraphModel model);
GraphModel model_from_string(const std::string& s);

struct ModelSpec {
    GraphModel model = GraphModel::random;
    int n_start = 100;
    int n_end = 1000;
    int snapshots = 24;
    double density = 0.01;
    double beta = 0.2;        // small-world rewiring probability
    double epsilon = 5e-2;    // geo-gd squared-distance scale
    int geo_seeds = 5;        // geo-gd seed nodes
    double p_cut = 0.2;       // geo-gd cut-off probability
    double p_child = 0.3;     // scale-free-gd child-father edge probability
    double q_keep = 0.7;      // scale-free-gd connection-copy probability
    std::uint64_t seed = 0;
};

// Nodes present at snapshot t. Random/SmallWorld/GeoGD arrive linearly,
// ScaleFree/ScaleFreeGD exponentially (capped at n_end).
int node_count_at(const ModelSpec& spec, int t);

// Per-snapshot edge quota: round(density * n * (n-1) / 2).
long edge_quota(const ModelSpec& spec, int n_nodes);

TemporalNetwork generate(const ModelSpec& spec);

struct LabeledNetwork {
    GraphModel model = GraphModel::random;
    int instance = 0;
    TemporalNetwork net;
};

// All five models x instances, with per-instance seeds derived from
// base_seed through the rng stream rule.
std::vector<LabeledNetwork> generate_suite(const ModelSpec& base,
                                           int instances_per_model,
                                           std::uint64_t base_seed);

// Internals exposed for verification.

// Ring lattice: every node linked to its max(1, round(quota/n)) nearest
// neighbors on each side.
std::vector<std::pair<NodeId, NodeId>> small_world_ring(int n_nodes, long quota);

struct GeoNode {
    double x = 0, y = 0;
    NodeId father = -1;
    bool cut_off = false;
};
// Places count nodes by geometric duplication, extending `layout` in place.
void geo_gd_place(std::vector<GeoNode>& layout, int count, const ModelSpec& spec, Rng& rng);

}  // namespace tempalign
