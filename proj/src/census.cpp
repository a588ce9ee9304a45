#include "tempalign/census.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tempalign {

GraphletCode induced_code(const Snapshot& snap, const NodeId* nodes, int k, Mode mode) {
    GraphletCode code = 0;
    if (mode == Mode::undirected) {
        // underlying adjacency, so directed snapshots census correctly in
        // undirected mode
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (snap.has_und(nodes[i], nodes[j]))
                    code |= GraphletCode{1} << pair_bit_undirected(k, i, j);
    } else {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j && snap.has_arc(nodes[i], nodes[j]))
                    code |= GraphletCode{1} << pair_bit_directed(k, i, j);
    }
    return code;
}

namespace {

struct EsuState {
    const Snapshot* snap;
    const OrbitCatalog* catalog;
    int k;
    Mode mode;
    NodeId root;
    std::vector<NodeId> sub;
    // visited = in subgraph or neighbor of it (exclusive-neighborhood rule)
    std::vector<std::uint8_t> visited;
    std::vector<OrbitOccurrence>* out;

    void emit() {
        OrbitOccurrence occ;
        occ.t = snap->t;
        std::array<NodeId, 4> sorted{};
        std::copy(sub.begin(), sub.end(), sorted.begin());
        std::sort(sorted.begin(), sorted.begin() + k);
        occ.nodes = sorted;
        const GraphletCode code = induced_code(*snap, sorted.data(), k, mode);
        const auto* orbits = catalog->classify_fast(code);
        occ.orbits = *orbits;
        out->push_back(occ);
    }

    void extend(std::vector<NodeId>& ext) {
        if (static_cast<int>(sub.size()) == k) {
            emit();
            return;
        }
        while (!ext.empty()) {
            const NodeId w = ext.back();
            ext.pop_back();
            std::vector<NodeId> ext2 = ext;
            std::vector<NodeId> newly_marked;
            for (NodeId u : snap->und[w]) {
                if (u > root && !visited[u]) {
                    ext2.push_back(u);
                    visited[u] = 1;
                    newly_marked.push_back(u);
                }
            }
            sub.push_back(w);
            extend(ext2);
            sub.pop_back();
            for (NodeId u : newly_marked) visited[u] = 0;
        }
    }
};

}  // namespace

std::vector<OrbitOccurrence> enumerate_occurrences(const Snapshot& snap,
                                                   const OrbitCatalog& catalog) {
    const int k = catalog.k();
    const int n = snap.n_nodes();
    std::vector<OrbitOccurrence> out;
    if (n < k) return out;

    EsuState st;
    st.snap = &snap;
    st.catalog = &catalog;
    st.k = k;
    st.mode = catalog.mode();
    st.visited.assign(n, 0);
    st.out = &out;

    for (NodeId v = 0; v < n; ++v) {
        st.root = v;
        st.sub = {v};
        st.visited[v] = 1;
        std::vector<NodeId> ext;
        std::vector<NodeId> marked;
        for (NodeId u : snap.und[v]) {
            if (u > v) {
                ext.push_back(u);
                st.visited[u] = 1;
                marked.push_back(u);
            }
        }
        st.extend(ext);
        st.visited[v] = 0;
        for (NodeId u : marked) st.visited[u] = 0;
    }
    return out;
}

std::vector<OrbitOccurrence> brute_force_census(const Snapshot& snap,
                                                const OrbitCatalog& catalog) {
    const int n = snap.n_nodes();
    if (n > 25) throw std::invalid_argument("brute_force_census: instance too large (n > 25)");
    const int k = catalog.k();
    const Mode mode = catalog.mode();
    std::vector<OrbitOccurrence> out;
    if (n < k) return out;

    std::array<NodeId, 4> combo{};
    // iterate all strictly increasing k-tuples
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        for (int i = 0; i < k; ++i) combo[i] = idx[i];
        const GraphletCode code = induced_code(snap, combo.data(), k, mode);
        if (const auto* orbits = catalog.classify_fast(code)) {
            OrbitOccurrence occ;
            occ.t = snap.t;
            occ.nodes = combo;
            occ.orbits = *orbits;
            out.push_back(occ);
        }
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

std::string occurrences_tsv(const std::vector<OrbitOccurrence>& occs, int k) {
    std::ostringstream out;
    out << "t\tnodes\torbits\n";
    for (const auto& occ : occs) {
        out << occ.t << "\t";
        for (int i = 0; i < k; ++i) out << (i ? "," : "") << occ.nodes[i];
        out << "\t";
        for (int i = 0; i < k; ++i) out << (i ? "," : "") << occ.orbits[i];
        out << "\n";
    }
    return out.str();
}

}  // namespace tempalign
