#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tempalign {

enum class Mode { undirected, directed };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

// Adjacency of a k-node (sub)graph packed into a bitmask:
//   undirected: pairs (i,j) with i<j in lexicographic order, C(k,2) bits
//   directed:   ordered pairs (i,j), i != j, index i*(k-1) + (j - (j>i)), k(k-1) bits
using GraphletCode = std::uint32_t;

int code_bits(int k, Mode mode);
int pair_bit_undirected(int k, int i, int j);
int pair_bit_directed(int k, int i, int j);
GraphletCode permute_code(int k, Mode mode, GraphletCode code, const std::array<int, 4>& perm);
bool code_connected(int k, Mode mode, GraphletCode code);  // weak connectivity

struct Graphlet {
    int k = 0;
    GraphletCode canon_code = 0;          // minimum code over all relabelings
    std::vector<int> orbit_of_pos;        // global orbit id per canonical position
    int n_orbits = 0;                     // orbits of this graphlet alone
};

// All connected non-isomorphic graphlets of one size and directionality,
// with automorphism orbits found by exhaustive permutation search (k <= 4).
// Orbit ids are global within the catalog, ordered by (canonical graphlet
// code, smallest position index of the orbit class), so ids are stable
// across runs and machines.
class OrbitCatalog {
public:
    static OrbitCatalog build(int k, Mode mode);

    int k() const { return k_; }
    Mode mode() const { return mode_; }
    int total_orbits() const { return total_orbits_; }
    const std::vector<Graphlet>& graphlets() const { return graphlets_; }

    // Per-position orbit ids of an arbitrary connected adjacency code.
    // Throws std::invalid_argument on a disconnected input.
    std::vector<int> classify(GraphletCode code) const;

    // Census fast path: per-position orbits, or nullptr when the code is
    // not (weakly) connected.
    const std::array<std::int16_t, 4>* classify_fast(GraphletCode code) const {
        const auto& entry = lut_[code];
        return entry[0] >= 0 ? &entry : nullptr;
    }

    std::string dump_tsv() const;

private:
    OrbitCatalog() = default;

    int k_ = 0;
    Mode mode_ = Mode::undirected;
    int total_orbits_ = 0;
    std::vector<Graphlet> graphlets_;
    std::vector<std::array<std::int16_t, 4>> lut_;  // indexed by code
};

}  // namespace tempalign
