#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tempalign {

using NodeId = int;

// Temporal edge live over the inclusive snapshot interval [start, end],
// 1-based. Instantaneous events have start == end.
struct Event {
    NodeId u = 0;
    NodeId v = 0;
    int start = 1;
    int end = 1;

    int duration() const { return end - start + 1; }
    friend bool operator==(const Event&, const Event&) = default;
    friend auto operator<=>(const Event&, const Event&) = default;
};

// Static graph of all events live at one snapshot index.
struct Snapshot {
    int t = 1;
    bool directed = false;
    // out-neighbors; for undirected snapshots this holds all neighbors.
    std::vector<std::vector<NodeId>> out;
    // in-neighbors; empty vectors when undirected.
    std::vector<std::vector<NodeId>> in;
    // underlying undirected neighbor lists (== out when undirected)
    std::vector<std::vector<NodeId>> und;

    int n_nodes() const { return static_cast<int>(out.size()); }
    std::size_t edge_count() const;
    bool has_arc(NodeId a, NodeId b) const;  // directed arc or undirected edge
    bool has_und(NodeId a, NodeId b) const;  // edge in the underlying undirected graph
};

double edge_density(const Snapshot& snap, int n_nodes);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable after construction. Events are merge-normalized: same-pair
// events with overlapping or adjacent intervals become one event, and
// undirected pairs are stored with u < v.
class TemporalNetwork {
public:
    TemporalNetwork(int n_nodes, int snapshots, bool directed,
                    std::vector<Event> events);

    static TemporalNetwork load(const std::string& path);
    // extra_comment ("#"-prefixed lines) lands right after the format header
    void save(const std::string& path, const std::string& extra_comment = "") const;

    int n_nodes() const { return n_nodes_; }
    int snapshot_count() const { return snapshots_; }
    bool directed() const { return directed_; }
    const std::vector<Event>& events() const { return events_; }

    Snapshot snapshot_at(int t) const;
    std::vector<Snapshot> all_snapshots() const;

    std::int64_t total_event_duration() const;

    // Union of all snapshot adjacencies, as undirected sorted neighbor lists.
    std::vector<std::vector<NodeId>> union_adjacency() const;

private:
    int n_nodes_;
    int snapshots_;
    bool directed_;
    std::vector<Event> events_;  // sorted by (u, v, start, end)
};

// Build a network from explicit per-snapshot edge lists (index 0 = snapshot 1).
// Consecutive presence of the same pair becomes one interval event.
TemporalNetwork from_snapshot_edges(
    int n_nodes, bool directed,
    const std::vector<std::vector<std::pair<NodeId, NodeId>>>& edges_per_snapshot);

// Directed copy of an undirected network: each event keeps its interval and
// gets a seed-determined orientation.
TemporalNetwork oriented_copy(const TemporalNetwork& net, std::uint64_t seed);

}  // namespace tempalign
