#pragma once

#include <cstdint>
#include <vector>

namespace tempalign {

// Self-contained xoshiro256** generator, seeded through splitmix64.
// We do not use <random> distributions because their output differs
// between standard-library implementations; every draw here is defined
// purely in terms of 64-bit integer arithmetic, so seeded runs are
// reproducible across platforms and compilers.
//
// Stream splitting: a child stream for (seed, tag) is seeded with
// splitmix64(seed XOR (tag + 1) * 0x9E3779B97F4A7C15). Deriving streams
// this way keeps independently generated objects (suite instances,
// ladder levels, ...) stable when unrelated parts of a run change.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : state_) s = splitmix64(x);
    }

    static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t x = seed ^ ((tag + 1) * 0x9E3779B97F4A7C15ULL);
        return splitmix64(x);
    }

    static Rng stream(std::uint64_t seed, std::uint64_t tag) {
        return Rng(stream_seed(seed, tag));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Unbiased integer in [0,n) (Lemire's method).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        unsigned __int128 m =
            static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t splitmix64(std::uint64_t&& x) {
        std::uint64_t tmp = x;
        return splitmix64(tmp);
    }

    std::uint64_t state_[4];
};

}  // namespace tempalign
