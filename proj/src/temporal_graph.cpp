#include "tempalign/temporal_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tempalign/rng.hpp"

namespace tempalign {

std::size_t Snapshot::edge_count() const {
    std::size_t deg_sum = 0;
    for (const auto& nb : out) deg_sum += nb.size();
    return directed ? deg_sum : deg_sum / 2;
}

bool Snapshot::has_arc(NodeId a, NodeId b) const {
    const auto& nb = out[static_cast<std::size_t>(a)];
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool Snapshot::has_und(NodeId a, NodeId b) const {
    const auto& nb = und[static_cast<std::size_t>(a)];
    return std::binary_search(nb.begin(), nb.end(), b);
}

double edge_density(const Snapshot& snap, int n_nodes) {
    if (n_nodes < 2) throw std::invalid_argument("edge_density: need n_nodes >= 2");
    const double n = n_nodes;
    const double possible = snap.directed ? n * (n - 1) : n * (n - 1) / 2.0;
    return static_cast<double>(snap.edge_count()) / possible;
}

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

}  // namespace

TemporalNetwork::TemporalNetwork(int n_nodes, int snapshots, bool directed,
                                 std::vector<Event> events)
    : n_nodes_(n_nodes), snapshots_(snapshots), directed_(directed) {
    if (n_nodes < 0) throw std::invalid_argument("negative node count");
    if (snapshots < 1) throw std::invalid_argument("snapshot count must be >= 1");
    for (auto& e : events) {
        if (e.u == e.v)
            throw std::invalid_argument("self-loop event on node " + std::to_string(e.u));
        if (!directed && e.u > e.v) std::swap(e.u, e.v);
        if (e.start < 1 || e.end > snapshots || e.start > e.end)
            throw std::invalid_argument("event interval [" + std::to_string(e.start) + "," +
                                        std::to_string(e.end) + "] out of range for T=" +
                                        std::to_string(snapshots));
        if (e.u < 0 || e.u >= n_nodes || e.v < 0 || e.v >= n_nodes)
            throw std::invalid_argument("event endpoint outside [0," +
                                        std::to_string(n_nodes) + ")");
    }
    // Merge same-pair events with overlapping or adjacent intervals.
    std::sort(events.begin(), events.end());
    events_.reserve(events.size());
    for (const auto& e : events) {
        if (!events_.empty()) {
            Event& last = events_.back();
            if (last.u == e.u && last.v == e.v && e.start <= last.end + 1) {
                last.end = std::max(last.end, e.end);
                continue;
            }
        }
        events_.push_back(e);
    }
}

TemporalNetwork TemporalNetwork::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");

    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError(path + ":" + std::to_string(line_no) + ": " + msg);
    };

    if (!std::getline(in, line)) throw ParseError(path + ": empty file, missing header");
    line_no = 1;
    long n_decl = -1, t_decl = -1, dir_decl = -1;
    {
        std::istringstream hs(line);
        std::string magic;
        hs >> magic;
        if (magic != "#temporal-net")
            throw fail("expected header '#temporal-net nodes=<N> snapshots=<T> directed=<0|1>'");
        std::string kv;
        while (hs >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw fail("malformed header field '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            long val = 0;
            try {
                val = std::stol(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw fail("non-numeric header value in '" + kv + "'");
            }
            if (key == "nodes") n_decl = val;
            else if (key == "snapshots") t_decl = val;
            else if (key == "directed") dir_decl = val;
            else throw fail("unknown header field '" + key + "'");
        }
        if (n_decl < 0 || t_decl < 1 || (dir_decl != 0 && dir_decl != 1))
            throw fail("header must declare nodes>=0, snapshots>=1, directed in {0,1}");
    }
    const bool directed = dir_decl == 1;

    std::vector<Event> raw;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        long u, v, s, f;
        if (!(ls >> u >> v >> s >> f)) throw fail("expected '<u> <v> <start> <end>'");
        std::string extra;
        if (ls >> extra) throw fail("trailing token '" + extra + "'");
        if (u < 0 || v < 0) throw fail("negative node id");
        if (u == v) throw fail("self-loop on node " + std::to_string(u));
        if (s > f) throw fail("event start " + std::to_string(s) + " > end " + std::to_string(f));
        if (s < 1 || f > t_decl)
            throw fail("interval [" + std::to_string(s) + "," + std::to_string(f) +
                       "] outside [1," + std::to_string(t_decl) + "]");
        raw.push_back(Event{static_cast<NodeId>(u), static_cast<NodeId>(v),
                            static_cast<int>(s), static_cast<int>(f)});
    }

    // Ids are kept as-is when already dense in [0, nodes); otherwise the
    // distinct ids are compacted onto [0, M) in sorted order.
    bool dense = true;
    for (const auto& e : raw)
        if (e.u >= n_decl || e.v >= n_decl) { dense = false; break; }
    if (!dense) {
        std::set<NodeId> ids;
        for (const auto& e : raw) { ids.insert(e.u); ids.insert(e.v); }
        if (static_cast<long>(ids.size()) > n_decl)
            throw ParseError(path + ": " + std::to_string(ids.size()) +
                             " distinct node ids exceed declared nodes=" +
                             std::to_string(n_decl));
        std::unordered_map<NodeId, NodeId> remap;
        NodeId next = 0;
        for (NodeId id : ids) remap[id] = next++;
        for (auto& e : raw) { e.u = remap[e.u]; e.v = remap[e.v]; }
    }
    return TemporalNetwork(static_cast<int>(n_decl), static_cast<int>(t_decl),
                           directed, std::move(raw));
}

void TemporalNetwork::save(const std::string& path, const std::string& extra_comment) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "#temporal-net nodes=" << n_nodes_ << " snapshots=" << snapshots_
        << " directed=" << (directed_ ? 1 : 0) << "\n";
    out << extra_comment;
    for (const auto& e : events_)
        out << e.u << " " << e.v << " " << e.start << " " << e.end << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

Snapshot TemporalNetwork::snapshot_at(int t) const {
    if (t < 1 || t > snapshots_)
        throw std::out_of_range("snapshot index " + std::to_string(t) +
                                " outside [1," + std::to_string(snapshots_) + "]");
    Snapshot s;
    s.t = t;
    s.directed = directed_;
    s.out.resize(n_nodes_);
    if (directed_) s.in.resize(n_nodes_);
    for (const auto& e : events_) {
        if (e.start <= t && t <= e.end) {
            s.out[e.u].push_back(e.v);
            if (directed_) s.in[e.v].push_back(e.u);
            else s.out[e.v].push_back(e.u);
        }
    }
    for (auto& nb : s.out) std::sort(nb.begin(), nb.end());
    for (auto& nb : s.in) std::sort(nb.begin(), nb.end());
    if (!directed_) {
        s.und = s.out;
    } else {
        s.und.resize(n_nodes_);
        for (NodeId u = 0; u < n_nodes_; ++u) {
            auto merged = s.out[u];
            merged.insert(merged.end(), s.in[u].begin(), s.in[u].end());
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            s.und[u] = std::move(merged);
        }
    }
    return s;
}

std::vector<Snapshot> TemporalNetwork::all_snapshots() const {
    std::vector<Snapshot> result;
    result.reserve(snapshots_);
    for (int t = 1; t <= snapshots_; ++t) result.push_back(snapshot_at(t));
    return result;
}

std::int64_t TemporalNetwork::total_event_duration() const {
    std::int64_t total = 0;
    for (const auto& e : events_) total += e.duration();
    return total;
}

std::vector<std::vector<NodeId>> TemporalNetwork::union_adjacency() const {
    std::vector<std::vector<NodeId>> adj(n_nodes_);
    for (const auto& e : events_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& nb : adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return adj;
}

TemporalNetwork from_snapshot_edges(
    int n_nodes, bool directed,
    const std::vector<std::vector<std::pair<NodeId, NodeId>>>& edges_per_snapshot) {
    const int T = static_cast<int>(edges_per_snapshot.size());
    std::map<std::uint64_t, Event> open;  // pair -> running interval
    std::vector<Event> events;
    for (int t = 1; t <= T; ++t) {
        std::set<std::uint64_t> present;
        for (auto [u, v] : edges_per_snapshot[static_cast<std::size_t>(t - 1)]) {
            if (!directed && u > v) std::swap(u, v);
            present.insert(pair_key(u, v));
        }
        // close intervals that ended at t-1
        for (auto it = open.begin(); it != open.end();) {
            if (!present.count(it->first)) {
                events.push_back(it->second);
                it = open.erase(it);
            } else {
                ++it;
            }
        }
        for (std::uint64_t key : present) {
            auto it = open.find(key);
            if (it != open.end()) {
                it->second.end = t;
            } else {
                const NodeId u = static_cast<NodeId>(key >> 32);
                const NodeId v = static_cast<NodeId>(key & 0xFFFFFFFFu);
                open[key] = Event{u, v, t, t};
            }
        }
    }
    for (auto& [key, e] : open) events.push_back(e);
    return TemporalNetwork(n_nodes, std::max(T, 1), directed, std::move(events));
}

TemporalNetwork oriented_copy(const TemporalNetwork& net, std::uint64_t seed) {
    if (net.directed()) throw std::invalid_argument("oriented_copy: input already directed");
    Rng rng(seed);
    std::vector<Event> events;
    events.reserve(net.events().size());
    for (const auto& e : net.events()) {
        Event d = e;
        if (rng.bernoulli(0.5)) std::swap(d.u, d.v);
        events.push_back(d);
    }
    return TemporalNetwork(net.n_nodes(), net.snapshot_count(), true, std::move(events));
}

}  // namespace tempalign
