#include <doctest.h>

#include "tempalign/noise.hpp"

#include <map>
#include <set>

#include "helpers.hpp"
#include "tempalign/synth_models.hpp"

using namespace tempalign;
using namespace testutil;

namespace {

std::multiset<std::pair<int, int>> interval_multiset(const TemporalNetwork& net) {
    std::multiset<std::pair<int, int>> spans;
    for (const auto& e : net.events()) spans.insert({e.start, e.end});
    return spans;
}

TemporalNetwork big_undirected(std::uint64_t seed) {
    ModelSpec spec;
    spec.model = GraphModel::random;
    spec.n_start = 60;
    spec.n_end = 150;
    spec.snapshots = 6;
    spec.density = 0.1;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST_CASE("p = 0 leaves the event list untouched") {
    Rng rng(1);
    const auto net = random_temporal_network(rng, 12, 4, 0.2, false);
    NoiseSpec spec;
    spec.scheme = NoiseScheme::undirected;
    spec.p = 0.0;
    spec.seed = 9;
    CHECK(randomize(net, spec).events() == net.events());

    const auto dnet = random_temporal_network(rng, 12, 4, 0.2, true);
    for (NoiseScheme scheme : {NoiseScheme::directed, NoiseScheme::pure_directed}) {
        spec.scheme = scheme;
        CHECK(randomize(dnet, spec).events() == dnet.events());
    }
}

TEST_CASE("pure directed at p = 1 reverses every event") {
    Rng rng(3);
    const auto net = random_temporal_network(rng, 10, 4, 0.2, true);
    NoiseSpec spec;
    spec.scheme = NoiseScheme::pure_directed;
    spec.p = 1.0;
    spec.seed = 5;
    const auto flipped = randomize(net, spec);
    std::vector<Event> expected;
    for (const auto& e : net.events()) expected.push_back({e.v, e.u, e.start, e.end});
    std::sort(expected.begin(), expected.end());
    CHECK(flipped.events() == expected);
}

TEST_CASE("pure directed preserves the undirected topology of every snapshot") {
    Rng rng(5);
    const auto net = random_temporal_network(rng, 12, 5, 0.25, true);
    NoiseSpec spec;
    spec.scheme = NoiseScheme::pure_directed;
    spec.p = 0.5;
    spec.seed = 6;
    const auto noisy = randomize(net, spec);
    for (int t = 1; t <= net.snapshot_count(); ++t) {
        const auto a = net.snapshot_at(t);
        const auto b = noisy.snapshot_at(t);
        CHECK(a.und == b.und);
    }
}

TEST_CASE("all schemes conserve event count and the timestamp multiset") {
    Rng rng(7);
    for (int rep = 0; rep < 6; ++rep) {
        const double p = 0.1 + 0.2 * rep;
        const auto unet = random_temporal_network(rng, 14, 5, 0.25, false);
        NoiseSpec spec;
        spec.scheme = NoiseScheme::undirected;
        spec.p = std::min(p, 1.0);
        spec.seed = 100 + rep;
        const auto noisy_u = randomize(unet, spec);
        CHECK(noisy_u.events().size() == unet.events().size());
        CHECK(interval_multiset(noisy_u) == interval_multiset(unet));

        const auto dnet = random_temporal_network(rng, 14, 5, 0.25, true);
        for (NoiseScheme scheme : {NoiseScheme::directed, NoiseScheme::pure_directed}) {
            spec.scheme = scheme;
            const auto noisy_d = randomize(dnet, spec);
            CHECK(noisy_d.events().size() == dnet.events().size());
            CHECK(interval_multiset(noisy_d) == interval_multiset(dnet));
        }
    }
}

TEST_CASE("crossover conserves per-node incident-event counts on single-interval networks") {
    // when every event shares one interval, endpoint crossover preserves the
    // degree sum of each node
    Rng rng(11);
    std::vector<Event> events;
    for (NodeId u = 0; u < 12; ++u)
        for (NodeId v = u + 1; v < 12; ++v)
            if (rng.bernoulli(0.4)) events.push_back({u, v, 1, 2});
    const TemporalNetwork net(12, 2, false, events);

    NoiseSpec spec;
    spec.scheme = NoiseScheme::undirected;
    spec.p = 0.5;
    spec.seed = 13;
    const auto noisy = randomize(net, spec);

    auto degree_of = [](const TemporalNetwork& n) {
        std::vector<int> deg(n.n_nodes(), 0);
        for (const auto& e : n.events()) {
            ++deg[e.u];
            ++deg[e.v];
        }
        return deg;
    };
    CHECK(degree_of(noisy) == degree_of(net));
}

TEST_CASE("undirected p = 0.2 touches a seed-pinned number of events") {
    // regression constant captured from the first run of this seed
    const auto net = big_undirected(2027);
    REQUIRE(net.events().size() >= 1000);
    NoiseSpec spec;
    spec.scheme = NoiseScheme::undirected;
    spec.p = 0.2;
    spec.seed = 4242;
    const auto noisy = randomize(net, spec);
    REQUIRE(noisy.events().size() == net.events().size());

    std::set<std::tuple<int, int, int, int>> original;
    for (const auto& e : net.events()) original.insert({e.u, e.v, e.start, e.end});
    int changed = 0;
    for (const auto& e : noisy.events())
        if (!original.count({e.u, e.v, e.start, e.end})) ++changed;
    CHECK(changed == 385);
}

TEST_CASE("directed scheme with gamma = 1 reverses the rewired events") {
    Rng rng(17);
    const auto net = random_temporal_network(rng, 14, 4, 0.25, true);
    NoiseSpec spec;
    spec.scheme = NoiseScheme::directed;
    spec.p = 1.0;
    spec.gamma = 1.0;
    spec.seed = 18;
    const auto noisy = randomize(net, spec);
    CHECK(noisy.events().size() == net.events().size());
    CHECK(noisy.events() != net.events());
}

TEST_CASE("swap-timestamps variant keeps the event count") {
    Rng rng(19);
    const auto net = random_temporal_network(rng, 14, 5, 0.25, false);
    NoiseSpec spec;
    spec.scheme = NoiseScheme::undirected;
    spec.p = 0.8;
    spec.seed = 20;
    spec.swap_timestamps = true;
    CHECK(randomize(net, spec).events().size() == net.events().size());
}

TEST_CASE("scheme/directionality mismatches are rejected") {
    Rng rng(23);
    const auto unet = random_temporal_network(rng, 8, 3, 0.3, false);
    const auto dnet = random_temporal_network(rng, 8, 3, 0.3, true);
    NoiseSpec spec;
    spec.p = 0.5;
    spec.scheme = NoiseScheme::pure_directed;
    CHECK_THROWS_AS(randomize(unet, spec), std::invalid_argument);
    spec.scheme = NoiseScheme::directed;
    CHECK_THROWS_AS(randomize(unet, spec), std::invalid_argument);
    spec.scheme = NoiseScheme::undirected;
    CHECK_THROWS_AS(randomize(dnet, spec), std::invalid_argument);
    spec.p = 1.5;
    CHECK_THROWS_AS(randomize(unet, spec), std::invalid_argument);
}

TEST_CASE("ladder: 11 levels x 5 instances, deterministic, identity at level 0") {
    Rng rng(29);
    const auto net = random_temporal_network(rng, 15, 4, 0.25, false);
    const auto ladder =
        noise_ladder(net, NoiseScheme::undirected, default_noise_levels(), 5, 31);
    CHECK(ladder.size() == 55);
    int zero_levels = 0;
    for (const auto& entry : ladder) {
        CHECK(entry.net.events().size() == net.events().size());
        if (entry.level_pct == 0) {
            ++zero_levels;
            CHECK(entry.net.events() == net.events());
        }
    }
    CHECK(zero_levels == 5);

    const auto again =
        noise_ladder(net, NoiseScheme::undirected, default_noise_levels(), 5, 31);
    for (std::size_t i = 0; i < ladder.size(); ++i)
        CHECK(ladder[i].net.events() == again[i].net.events());

    const auto single = noise_ladder(net, NoiseScheme::undirected, {0}, 5, 31);
    CHECK(single.size() == 5);
    for (const auto& entry : single) CHECK(entry.net.events() == net.events());
}
