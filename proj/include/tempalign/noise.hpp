#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempalign/temporal_graph.hpp"

namespace tempalign {

enum class NoiseScheme { undirected, directed, pure_directed };

std::string to_string(NoiseScheme scheme);
NoiseScheme scheme_from_string(const std::string& s);

struct NoiseSpec {
    NoiseScheme scheme = NoiseScheme::undirected;
    double p = 0.0;      // rewiring probability / level
    double gamma = 0.5;  // edge-reversal probability (directed scheme)
    std::uint64_t seed = 0;
    // Alternative timestamp rule: the rewired partner event takes over
    // e1's timestamps instead of keeping its own.
    bool swap_timestamps = false;
};

// Randomized copy with the same node set and event count. The undirected and
// directed schemes walk a shuffled to-rewire list and cross endpoint pairs
// with probability p; the directed scheme additionally reverses rewired
// events with probability gamma. pure_directed reverses each event
// independently with probability p and never touches timestamps.
TemporalNetwork randomize(const TemporalNetwork& net, const NoiseSpec& spec);

struct LadderEntry {
    int level_pct = 0;  // 0..20
    int instance = 0;
    std::uint64_t seed = 0;
    TemporalNetwork net;
};

std::vector<int> default_noise_levels();  // {0,2,...,20} percent

std::vector<LadderEntry> noise_ladder(const TemporalNetwork& net, NoiseScheme scheme,
                                      const std::vector<int>& levels_pct,
                                      int instances_per_level, std::uint64_t base_seed,
                                      double gamma = 0.5);

}  // namespace tempalign
