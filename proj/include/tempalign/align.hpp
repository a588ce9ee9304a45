#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempalign/feature_space.hpp"
#include "tempalign/temporal_graph.hpp"

namespace tempalign {

// Total injective mapping V(G) -> V(H); mapping[g] is the H node aligned to g.
struct Alignment {
    std::vector<NodeId> mapping;
    double alpha = 0.0;
};

struct ObjectiveScore {
    double s_n = 0.0;
    double s_e = 0.0;
    double total = 0.0;
};

// Mean similarity over aligned pairs.
double score_node_conservation(const std::vector<NodeId>& mapping,
                               const SimilarityMatrix& sim);

// Conserved-event mass: for every G event whose endpoint images carry an
// interval-overlapping H event, the overlap length weighted by interval
// jaccard and mean endpoint similarity, normalized by the smaller network's
// total event duration and clipped to [0,1].
double score_edge_conservation(const std::vector<NodeId>& mapping,
                               const TemporalNetwork& g, const TemporalNetwork& h,
                               const SimilarityMatrix& sim);

ObjectiveScore score_alignment(const std::vector<NodeId>& mapping,
                               const TemporalNetwork& g, const TemporalNetwork& h,
                               const SimilarityMatrix& sim, double alpha);

// Seed-and-extend: seed at the most similar pair, then repeatedly commit the
// frontier pair (g neighbors an aligned node, h neighbors its image)
// maximizing alpha*delta_s_e + (1-alpha)*sim, reseeding by best similarity
// when the frontier runs dry. Ties break lexicographically on (g,h); the rng
// seed is accepted for interface stability but never consulted.
Alignment align(const TemporalNetwork& g, const TemporalNetwork& h,
                const SimilarityMatrix& sim, double alpha, std::uint64_t seed = 0);

// Objective of a known ground-truth mapping under the same scoring.
ObjectiveScore ideal_score(const TemporalNetwork& g, const TemporalNetwork& h,
                           const std::vector<NodeId>& truth_mapping,
                           const SimilarityMatrix& sim, double alpha);

void save_alignment(const std::string& path, const Alignment& aln,
                    const ObjectiveScore& score, const std::string& header = "");
std::vector<NodeId> load_alignment(const std::string& path, int n_g);

}  // namespace tempalign
