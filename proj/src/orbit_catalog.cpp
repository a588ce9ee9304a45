#include "tempalign/orbit_catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tempalign {

std::string to_string(Mode mode) {
    return mode == Mode::undirected ? "undirected" : "directed";
}

Mode mode_from_string(const std::string& s) {
    if (s == "undirected") return Mode::undirected;
    if (s == "directed") return Mode::directed;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

int code_bits(int k, Mode mode) {
    return mode == Mode::undirected ? k * (k - 1) / 2 : k * (k - 1);
}

int pair_bit_undirected(int k, int i, int j) {
    // lexicographic index of (i,j), i<j
    return i * k - i * (i + 1) / 2 + (j - i - 1);
}

int pair_bit_directed(int k, int i, int j) {
    return i * (k - 1) + (j > i ? j - 1 : j);
}

GraphletCode permute_code(int k, Mode mode, GraphletCode code,
                          const std::array<int, 4>& perm) {
    GraphletCode out = 0;
    if (mode == Mode::undirected) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (code >> pair_bit_undirected(k, i, j) & 1) {
                    int a = perm[i], b = perm[j];
                    if (a > b) std::swap(a, b);
                    out |= GraphletCode{1} << pair_bit_undirected(k, a, b);
                }
    } else {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j && (code >> pair_bit_directed(k, i, j) & 1))
                    out |= GraphletCode{1} << pair_bit_directed(k, perm[i], perm[j]);
    }
    return out;
}

bool code_connected(int k, Mode mode, GraphletCode code) {
    // union (undirected view) adjacency, then BFS from position 0
    std::array<std::uint8_t, 4> seen{};
    std::array<int, 4> stack{};
    int top = 0;
    stack[top++] = 0;
    seen[0] = 1;
    int count = 1;
    auto linked = [&](int a, int b) {
        if (mode == Mode::undirected) {
            int i = std::min(a, b), j = std::max(a, b);
            return (code >> pair_bit_undirected(k, i, j) & 1) != 0;
        }
        return ((code >> pair_bit_directed(k, a, b) & 1) |
                (code >> pair_bit_directed(k, b, a) & 1)) != 0;
    };
    while (top > 0) {
        const int a = stack[--top];
        for (int b = 0; b < k; ++b) {
            if (b == a || seen[b]) continue;
            if (linked(a, b)) {
                seen[b] = 1;
                ++count;
                stack[top++] = b;
            }
        }
    }
    return count == k;
}

namespace {

std::vector<std::array<int, 4>> all_permutations(int k) {
    std::array<int, 4> base{0, 1, 2, 3};
    std::vector<int> p(base.begin(), base.begin() + k);
    std::vector<std::array<int, 4>> perms;
    do {
        std::array<int, 4> a{0, 0, 0, 0};
        std::copy(p.begin(), p.end(), a.begin());
        perms.push_back(a);
    } while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

}  // namespace

OrbitCatalog OrbitCatalog::build(int k, Mode mode) {
    if (k < 2 || k > 4)
        throw std::invalid_argument("graphlet size " + std::to_string(k) +
                                    " unsupported (need 2 <= k <= 4)");
    OrbitCatalog cat;
    cat.k_ = k;
    cat.mode_ = mode;

    const auto perms = all_permutations(k);
    const GraphletCode n_codes = GraphletCode{1} << code_bits(k, mode);
    cat.lut_.assign(n_codes, {-1, -1, -1, -1});

    // Pass 1: canonical codes of all connected graphs.
    std::vector<GraphletCode> canon(n_codes, 0);
    std::map<GraphletCode, std::vector<int>> orbit_of_canon_pos;
    for (GraphletCode code = 1; code < n_codes; ++code) {
        if (!code_connected(k, mode, code)) continue;
        GraphletCode best = code;
        for (const auto& p : perms)
            best = std::min(best, permute_code(k, mode, code, p));
        canon[code] = best;
        orbit_of_canon_pos.try_emplace(best);
    }

    // Pass 2: orbit partition of each canonical graphlet via automorphisms.
    int next_orbit = 0;
    for (auto& [ccode, orbit_ids] : orbit_of_canon_pos) {
        std::array<int, 4> parent{0, 1, 2, 3};
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& p : perms) {
            if (permute_code(k, mode, ccode, p) != ccode) continue;
            for (int i = 0; i < k; ++i) {
                int a = find(i), b = find(p[i]);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
        // classes keyed by their minimum position; iteration over positions in
        // ascending order assigns ids by smallest member
        orbit_ids.assign(k, -1);
        std::map<int, int> class_to_id;
        int local = 0;
        for (int i = 0; i < k; ++i) {
            const int root = find(i);
            auto [it, inserted] = class_to_id.try_emplace(root, next_orbit + local);
            if (inserted) ++local;
            orbit_ids[i] = it->second;
        }
        Graphlet g;
        g.k = k;
        g.canon_code = ccode;
        g.orbit_of_pos = orbit_ids;
        g.n_orbits = local;
        cat.graphlets_.push_back(std::move(g));
        next_orbit += local;
    }
    cat.total_orbits_ = next_orbit;

    // Pass 3: classification table. Any permutation reaching the canonical
    // code yields the same orbit assignment (two such permutations differ by
    // an automorphism).
    for (GraphletCode code = 1; code < n_codes; ++code) {
        if (canon[code] == 0) continue;
        const auto& orbit_ids = orbit_of_canon_pos.at(canon[code]);
        for (const auto& p : perms) {
            if (permute_code(k, mode, code, p) != canon[code]) continue;
            auto& entry = cat.lut_[code];
            for (int i = 0; i < k; ++i)
                entry[i] = static_cast<std::int16_t>(orbit_ids[p[i]]);
            break;
        }
    }
    return cat;
}

std::vector<int> OrbitCatalog::classify(GraphletCode code) const {
    if (code >= lut_.size())
        throw std::invalid_argument("adjacency code out of range");
    const auto* entry = classify_fast(code);
    if (!entry)
        throw std::invalid_argument("adjacency code is not connected");
    return std::vector<int>(entry->begin(), entry->begin() + k_);
}

std::string OrbitCatalog::dump_tsv() const {
    std::ostringstream out;
    out << "graphlet\tk\tmode\tedges\torbit_of_position\n";
    for (std::size_t gi = 0; gi < graphlets_.size(); ++gi) {
        const auto& g = graphlets_[gi];
        std::ostringstream edges;
        bool first = true;
        auto emit = [&](int i, int j, const char* sep) {
            if (!first) edges << ",";
            edges << i << sep << j;
            first = false;
        };
        if (mode_ == Mode::undirected) {
            for (int i = 0; i < k_; ++i)
                for (int j = i + 1; j < k_; ++j)
                    if (g.canon_code >> pair_bit_undirected(k_, i, j) & 1) emit(i, j, "-");
        } else {
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j)
                    if (i != j && (g.canon_code >> pair_bit_directed(k_, i, j) & 1))
                        emit(i, j, ">");
        }
        out << gi << "\t" << k_ << "\t" << to_string(mode_) << "\t" << edges.str() << "\t";
        for (int i = 0; i < k_; ++i) out << (i ? "," : "") << g.orbit_of_pos[i];
        out << "\n";
    }
    return out.str();
}

}  // namespace tempalign
