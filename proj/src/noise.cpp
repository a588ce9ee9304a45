#include "tempalign/noise.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "tempalign/rng.hpp"

namespace tempalign {

std::string to_string(NoiseScheme scheme) {
    switch (scheme) {
        case NoiseScheme::undirected: return "undirected";
        case NoiseScheme::directed: return "directed";
        case NoiseScheme::pure_directed: return "pure-directed";
    }
    return "?";
}

NoiseScheme scheme_from_string(const std::string& s) {
    if (s == "undirected") return NoiseScheme::undirected;
    if (s == "directed") return NoiseScheme::directed;
    if (s == "pure-directed" || s == "pure_directed") return NoiseScheme::pure_directed;
    throw std::invalid_argument("unknown randomization scheme '" + s + "'");
}

namespace {

std::uint64_t pkey(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

bool spans_conflict(int s1, int f1, int s2, int f2) {
    // overlapping or adjacent intervals would be merge-normalized away
    return s1 <= f2 + 1 && s2 <= f1 + 1;
}

struct PairIndex {
    std::unordered_map<std::uint64_t, std::vector<int>> map;
    bool directed;

    std::uint64_t key(const Event& e) const {
        NodeId u = e.u, v = e.v;
        if (!directed && u > v) std::swap(u, v);
        return pkey(u, v);
    }
    void add(const Event& e, int idx) { map[key(e)].push_back(idx); }
    void remove(const Event& e, int idx) {
        auto& lst = map[key(e)];
        lst.erase(std::find(lst.begin(), lst.end(), idx));
    }
    // conflict against current events, ignoring the two being replaced
    bool conflicts(const std::vector<Event>& events, const Event& cand,
                   int skip_a, int skip_b) const {
        auto it = map.find(key(cand));
        if (it == map.end()) return false;
        for (int idx : it->second) {
            if (idx == skip_a || idx == skip_b) continue;
            const Event& other = events[idx];
            if (spans_conflict(cand.start, cand.end, other.start, other.end)) return true;
        }
        return false;
    }
};

TemporalNetwork crossover_randomize(const TemporalNetwork& net, const NoiseSpec& spec) {
    Rng rng(spec.seed);
    std::vector<Event> events = net.events();
    const int n_events = static_cast<int>(events.size());
    const bool reversal = spec.scheme == NoiseScheme::directed;
    const bool undirected = !net.directed();

    PairIndex pairs{{}, net.directed()};
    for (int i = 0; i < n_events; ++i) pairs.add(events[i], i);

    std::vector<int> order(n_events);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<std::uint8_t> in_list(n_events, 1);
    std::vector<int> active = order;  // events still in the to-rewire list
    std::vector<int> active_pos(n_events);
    for (int i = 0; i < static_cast<int>(active.size()); ++i) active_pos[active[i]] = i;
    auto drop_active = [&](int idx) {
        const int pos = active_pos[idx];
        active[pos] = active.back();
        active_pos[active[pos]] = pos;
        active.pop_back();
        in_list[idx] = 0;
    };

    auto normalize = [&](Event& e) {
        if (undirected && e.u > e.v) std::swap(e.u, e.v);
    };

    for (int idx1 : order) {
        if (!in_list[idx1]) continue;
        drop_active(idx1);
        if (!rng.bernoulli(spec.p)) continue;

        for (int attempt = 0; attempt < 20 && !active.empty(); ++attempt) {
            const int idx2 = active[static_cast<std::size_t>(rng.below(active.size()))];
            const Event e1 = events[idx1];
            const Event e2 = events[idx2];
            Event ne1, ne2;
            if (rng.bernoulli(0.5)) {
                ne1 = {e1.u, e2.v, e1.start, e1.end};
                ne2 = {e2.u, e1.v, e2.start, e2.end};
            } else {
                ne1 = {e1.u, e2.u, e1.start, e1.end};
                ne2 = {e1.v, e2.v, e2.start, e2.end};
            }
            if (spec.swap_timestamps) {
                ne2.start = e1.start;
                ne2.end = e1.end;
            }
            if (reversal) {
                if (rng.bernoulli(spec.gamma)) std::swap(ne1.u, ne1.v);
                if (rng.bernoulli(spec.gamma)) std::swap(ne2.u, ne2.v);
            }
            normalize(ne1);
            normalize(ne2);
            if (ne1.u == ne1.v || ne2.u == ne2.v) continue;
            if (pairs.conflicts(events, ne1, idx1, idx2)) continue;
            if (pairs.conflicts(events, ne2, idx1, idx2)) continue;
            if (pairs.key(ne1) == pairs.key(ne2) &&
                spans_conflict(ne1.start, ne1.end, ne2.start, ne2.end))
                continue;

            pairs.remove(e1, idx1);
            pairs.remove(e2, idx2);
            events[idx1] = ne1;
            events[idx2] = ne2;
            pairs.add(ne1, idx1);
            pairs.add(ne2, idx2);
            drop_active(idx2);
            break;
        }
    }
    return TemporalNetwork(net.n_nodes(), net.snapshot_count(), net.directed(),
                           std::move(events));
}

TemporalNetwork pure_directed_randomize(const TemporalNetwork& net, const NoiseSpec& spec) {
    Rng rng(spec.seed);
    std::vector<Event> events = net.events();
    const int n_events = static_cast<int>(events.size());
    std::vector<std::uint8_t> flipped(n_events, 0);
    for (int i = 0; i < n_events; ++i) {
        if (rng.bernoulli(spec.p)) {
            std::swap(events[i].u, events[i].v);
            flipped[i] = 1;
        }
    }
    // Reverting a flip moves the event back to a pair that was conflict-free
    // in the input, but another flip may have landed there; iterate until no
    // same-pair intervals would merge. Each pass reverts at least one flip.
    while (true) {
        std::unordered_map<std::uint64_t, std::vector<int>> by_pair;
        for (int i = 0; i < n_events; ++i) by_pair[pkey(events[i].u, events[i].v)].push_back(i);
        int revert = -1;
        for (const auto& [key, idxs] : by_pair) {
            if (idxs.size() < 2) continue;
            for (std::size_t a = 0; a + 1 < idxs.size() && revert < 0; ++a)
                for (std::size_t b = a + 1; b < idxs.size() && revert < 0; ++b) {
                    const Event& ea = events[idxs[a]];
                    const Event& eb = events[idxs[b]];
                    if (!spans_conflict(ea.start, ea.end, eb.start, eb.end)) continue;
                    for (int idx : {idxs[a], idxs[b]})
                        if (flipped[idx] && (revert < 0 || idx < revert)) revert = idx;
                }
            if (revert >= 0) break;
        }
        if (revert < 0) break;
        std::swap(events[revert].u, events[revert].v);
        flipped[revert] = 0;
    }
    return TemporalNetwork(net.n_nodes(), net.snapshot_count(), true, std::move(events));
}

}  // namespace

TemporalNetwork randomize(const TemporalNetwork& net, const NoiseSpec& spec) {
    if (spec.p < 0.0 || spec.p > 1.0)
        throw std::invalid_argument("randomize: p must be in [0,1]");
    if (spec.gamma < 0.0 || spec.gamma > 1.0)
        throw std::invalid_argument("randomize: gamma must be in [0,1]");
    switch (spec.scheme) {
        case NoiseScheme::undirected:
            if (net.directed())
                throw std::invalid_argument("undirected randomization needs an undirected network");
            return crossover_randomize(net, spec);
        case NoiseScheme::directed:
            if (!net.directed())
                throw std::invalid_argument("directed randomization needs a directed network");
            return crossover_randomize(net, spec);
        case NoiseScheme::pure_directed:
            if (!net.directed())
                throw std::invalid_argument("pure directed randomization needs a directed network");
            return pure_directed_randomize(net, spec);
    }
    throw std::logic_error("unreachable");
}

std::vector<int> default_noise_levels() {
    std::vector<int> levels;
    for (int pct = 0; pct <= 20; pct += 2) levels.push_back(pct);
    return levels;
}

std::vector<LadderEntry> noise_ladder(const TemporalNetwork& net, NoiseScheme scheme,
                                      const std::vector<int>& levels_pct,
                                      int instances_per_level, std::uint64_t base_seed,
                                      double gamma) {
    std::vector<LadderEntry> ladder;
    for (int pct : levels_pct) {
        for (int inst = 0; inst < instances_per_level; ++inst) {
            NoiseSpec spec;
            spec.scheme = scheme;
            spec.p = pct / 100.0;
            spec.gamma = gamma;
            // One stream per instance, shared across levels: an instance's
            // rewire coins are coupled, so its level-p copy is close to a
            // subset-rewiring of its level-(p+2%) copy and curves over the
            // ladder degrade smoothly instead of jittering between
            // independent draws.
            spec.seed = Rng::stream_seed(base_seed, static_cast<std::uint64_t>(inst));
            ladder.push_back({pct, inst, spec.seed, randomize(net, spec)});
        }
    }
    return ladder;
}

}  // namespace tempalign
