#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tempalign/census.hpp"

namespace tempalign {

// Per-node orbit-transition counts for one or more graphlet sizes.
// Cell (i,j) of a node's k-matrix counts how often the node moved from
// orbit i to orbit j between consecutive occurrences of the same node set.
// Stored sparsely: directed 4-node catalogs have 697 orbits, so a dense
// |O|x|O| block per node would be wasteful.
class GoTTensor {
public:
    GoTTensor(int n_nodes, Mode mode, std::vector<int> ks,
              std::vector<int> orbit_counts);

    int n_nodes() const { return n_nodes_; }
    Mode mode() const { return mode_; }
    const std::vector<int>& ks() const { return ks_; }
    int orbit_count(int k) const;

    void add(NodeId node, int k, int from_orbit, int to_orbit, std::int64_t delta = 1);
    std::int64_t at(NodeId node, int k, int from_orbit, int to_orbit) const;
    std::int64_t total_transitions() const;  // sum of all cells over all nodes

    // Row-major flattening of the node's matrices, ascending k, using the
    // requested subset of sizes. Throws if a requested k is absent.
    std::vector<double> flatten_node(NodeId node, const std::vector<int>& ks) const;
    std::vector<double> flatten_node(NodeId node) const { return flatten_node(node, ks_); }
    std::size_t feature_length(const std::vector<int>& ks) const;
    std::size_t feature_length() const { return feature_length(ks_); }

    // Sparse row view: (flat feature index, count), sorted by index.
    std::vector<std::pair<std::uint32_t, double>> sparse_row(
        NodeId node, const std::vector<int>& ks) const;

private:
    int k_slot(int k) const;

    int n_nodes_;
    Mode mode_;
    std::vector<int> ks_;            // ascending
    std::vector<int> orbit_counts_;  // aligned with ks_
    // per k-slot, per node: cell key i*|O|+j -> count
    std::vector<std::vector<std::unordered_map<std::uint32_t, std::int64_t>>> counts_;
};

struct GotOptions {
    // Pair occurrences at consecutive census appearances of a node set
    // (Algorithm semantics). When strict_consecutive is set, a pair only
    // counts if the appearances are in adjacent snapshots (t, t+1).
    bool strict_consecutive = false;
    int threads = 1;
};

GoTTensor extract_gots(const TemporalNetwork& net, const std::vector<int>& ks,
                       Mode mode, const GotOptions& options = {});

// Named feature sets: u3, u4, u34, d3, d4, d34 (+ optional k=2 block).
struct KSet {
    Mode mode = Mode::undirected;
    std::vector<int> ks;
};
KSet parse_kset(const std::string& name, bool include_k2 = false);

std::string features_tsv(const GoTTensor& tensor);

}  // namespace tempalign
