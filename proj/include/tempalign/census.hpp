#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tempalign/orbit_catalog.hpp"
#include "tempalign/temporal_graph.hpp"

namespace tempalign {

// One connected induced k-node subgraph occurrence: nodes sorted ascending,
// orbits[i] is the orbit of nodes[i] in the induced subgraph at snapshot t.
struct OrbitOccurrence {
    std::array<NodeId, 4> nodes{};
    int t = 0;
    std::array<std::int16_t, 4> orbits{};

    friend bool operator==(const OrbitOccurrence&, const OrbitOccurrence&) = default;
    friend auto operator<=>(const OrbitOccurrence&, const OrbitOccurrence&) = default;
};

// Adjacency code of the subgraph induced by k sorted nodes.
GraphletCode induced_code(const Snapshot& snap, const NodeId* nodes, int k, Mode mode);

// ESU-style enumeration: every connected induced k-node subgraph exactly
// once (exclusive-neighborhood extension). Output order is unspecified.
std::vector<OrbitOccurrence> enumerate_occurrences(const Snapshot& snap,
                                                   const OrbitCatalog& catalog);

// Correctness oracle over all C(n,k) subsets; refuses snapshots with more
// than 25 nodes.
std::vector<OrbitOccurrence> brute_force_census(const Snapshot& snap,
                                                const OrbitCatalog& catalog);

std::string occurrences_tsv(const std::vector<OrbitOccurrence>& occs, int k);

}  // namespace tempalign
