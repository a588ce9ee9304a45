#include "tempalign/got.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tempalign/parallel.hpp"

namespace tempalign {

GoTTensor::GoTTensor(int n_nodes, Mode mode, std::vector<int> ks,
                     std::vector<int> orbit_counts)
    : n_nodes_(n_nodes), mode_(mode), ks_(std::move(ks)),
      orbit_counts_(std::move(orbit_counts)) {
    if (ks_.size() != orbit_counts_.size())
        throw std::invalid_argument("GoTTensor: ks/orbit_counts size mismatch");
    if (!std::is_sorted(ks_.begin(), ks_.end()))
        throw std::invalid_argument("GoTTensor: ks must be ascending");
    counts_.resize(ks_.size());
    for (auto& per_node : counts_) per_node.resize(n_nodes_);
}

int GoTTensor::k_slot(int k) const {
    for (std::size_t i = 0; i < ks_.size(); ++i)
        if (ks_[i] == k) return static_cast<int>(i);
    throw std::invalid_argument("GoTTensor: size k=" + std::to_string(k) + " not present");
}

int GoTTensor::orbit_count(int k) const { return orbit_counts_[k_slot(k)]; }

void GoTTensor::add(NodeId node, int k, int from_orbit, int to_orbit, std::int64_t delta) {
    const int slot = k_slot(k);
    const std::uint32_t key =
        static_cast<std::uint32_t>(from_orbit) * orbit_counts_[slot] + to_orbit;
    counts_[slot][node][key] += delta;
}

std::int64_t GoTTensor::at(NodeId node, int k, int from_orbit, int to_orbit) const {
    const int slot = k_slot(k);
    const auto& cells = counts_[slot][node];
    const std::uint32_t key =
        static_cast<std::uint32_t>(from_orbit) * orbit_counts_[slot] + to_orbit;
    auto it = cells.find(key);
    return it == cells.end() ? 0 : it->second;
}

std::int64_t GoTTensor::total_transitions() const {
    std::int64_t total = 0;
    for (const auto& per_node : counts_)
        for (const auto& cells : per_node)
            for (const auto& [key, c] : cells) total += c;
    return total;
}

std::size_t GoTTensor::feature_length(const std::vector<int>& ks) const {
    std::size_t len = 0;
    for (int k : ks) {
        const std::size_t o = static_cast<std::size_t>(orbit_count(k));
        len += o * o;
    }
    return len;
}

std::vector<double> GoTTensor::flatten_node(NodeId node, const std::vector<int>& ks) const {
    if (!std::is_sorted(ks.begin(), ks.end()))
        throw std::invalid_argument("flatten: ks must be ascending");
    std::vector<double> row(feature_length(ks), 0.0);
    std::size_t offset = 0;
    for (int k : ks) {
        const int slot = k_slot(k);
        const std::size_t o = static_cast<std::size_t>(orbit_counts_[slot]);
        for (const auto& [key, c] : counts_[slot][node])
            row[offset + key] = static_cast<double>(c);
        offset += o * o;
    }
    return row;
}

std::vector<std::pair<std::uint32_t, double>> GoTTensor::sparse_row(
    NodeId node, const std::vector<int>& ks) const {
    std::vector<std::pair<std::uint32_t, double>> row;
    std::uint32_t offset = 0;
    for (int k : ks) {
        const int slot = k_slot(k);
        const std::uint32_t o = static_cast<std::uint32_t>(orbit_counts_[slot]);
        for (const auto& [key, c] : counts_[slot][node])
            row.emplace_back(offset + key, static_cast<double>(c));
        offset += o * o;
    }
    std::sort(row.begin(), row.end());
    return row;
}

namespace {

std::uint64_t node_set_key(const std::array<NodeId, 4>& nodes, int k) {
    // node ids fit in 16 bits for any network this tool targets
    std::uint64_t key = 0;
    for (int i = 0; i < k; ++i)
        key = key << 16 | static_cast<std::uint16_t>(nodes[i]);
    return key;
}

}  // namespace

GoTTensor extract_gots(const TemporalNetwork& net, const std::vector<int>& ks,
                       Mode mode, const GotOptions& options) {
    std::vector<int> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());
    if (mode == Mode::directed && !net.directed())
        throw std::invalid_argument("directed GoTs require a directed network");

    std::vector<int> orbit_counts;
    std::vector<OrbitCatalog> catalogs;
    for (int k : sorted_ks) {
        catalogs.push_back(OrbitCatalog::build(k, mode));
        orbit_counts.push_back(catalogs.back().total_orbits());
    }
    GoTTensor tensor(net.n_nodes(), mode, sorted_ks, orbit_counts);

    const int T = net.snapshot_count();
    std::vector<Snapshot> snaps(T);
    parallel_for(T, options.threads,
                 [&](int i) { snaps[i] = net.snapshot_at(i + 1); });

    for (std::size_t slot = 0; slot < sorted_ks.size(); ++slot) {
        const int k = sorted_ks[slot];
        const auto& catalog = catalogs[slot];

        std::vector<std::vector<OrbitOccurrence>> per_snapshot(T);
        parallel_for(T, options.threads, [&](int i) {
            per_snapshot[i] = enumerate_occurrences(snaps[i], catalog);
        });

        // Stream snapshots in time order, remembering the last appearance of
        // each node set. Pairing a new appearance with the remembered one is
        // exactly the sort-by-(nodes,t) consecutive-pair rule.
        struct Last {
            int t;
            std::array<std::int16_t, 4> orbits;
        };
        std::unordered_map<std::uint64_t, Last> last;
        for (int t_idx = 0; t_idx < T; ++t_idx) {
            for (const auto& occ : per_snapshot[t_idx]) {
                const std::uint64_t key = node_set_key(occ.nodes, k);
                auto it = last.find(key);
                if (it != last.end()) {
                    const bool adjacent = it->second.t + 1 == occ.t;
                    if (!options.strict_consecutive || adjacent) {
                        for (int i = 0; i < k; ++i)
                            tensor.add(occ.nodes[i], k, it->second.orbits[i], occ.orbits[i]);
                    }
                    it->second = Last{occ.t, occ.orbits};
                } else {
                    last.emplace(key, Last{occ.t, occ.orbits});
                }
            }
        }
    }
    return tensor;
}

KSet parse_kset(const std::string& name, bool include_k2) {
    KSet set;
    if (name == "u3") set = {Mode::undirected, {3}};
    else if (name == "u4") set = {Mode::undirected, {4}};
    else if (name == "u34") set = {Mode::undirected, {3, 4}};
    else if (name == "d3") set = {Mode::directed, {3}};
    else if (name == "d4") set = {Mode::directed, {4}};
    else if (name == "d34") set = {Mode::directed, {3, 4}};
    else throw std::invalid_argument("unknown k-set '" + name +
                                     "' (expected u3,u4,u34,d3,d4,d34)");
    if (include_k2) set.ks.insert(set.ks.begin(), 2);
    return set;
}

std::string features_tsv(const GoTTensor& tensor) {
    std::ostringstream out;
    const std::size_t len = tensor.feature_length();
    for (NodeId v = 0; v < tensor.n_nodes(); ++v) {
        const auto row = tensor.flatten_node(v);
        out << v;
        for (std::size_t i = 0; i < len; ++i)
            out << "\t" << static_cast<std::int64_t>(row[i]);
        out << "\n";
    }
    return out.str();
}

}  // namespace tempalign
