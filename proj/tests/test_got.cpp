#include <doctest.h>

#include "tempalign/got.hpp"

#include <map>

#include "helpers.hpp"

using namespace tempalign;
using namespace testutil;

namespace {

// orbit ids for the undirected 3-node worked example
struct U3Orbits {
    int chain_center, chain_periphery, triangle;
};
U3Orbits u3_orbits() {
    const auto catalog = OrbitCatalog::build(3, Mode::undirected);
    const auto chain = catalog.classify(GraphletCode{1} << pair_bit_undirected(3, 0, 1) |
                                        GraphletCode{1} << pair_bit_undirected(3, 1, 2));
    const auto tri = catalog.classify((GraphletCode{1} << pair_bit_undirected(3, 0, 1)) |
                                      (GraphletCode{1} << pair_bit_undirected(3, 1, 2)) |
                                      (GraphletCode{1} << pair_bit_undirected(3, 0, 2)));
    return {chain[1], chain[0], tri[0]};
}

}  // namespace

TEST_CASE("triangle-to-chain worked example") {
    // t=1: triangle {0,1,2}; t=2: edge 0-2 removed, chain 0-1-2 with center 1
    const TemporalNetwork net(3, 2, false,
                              {{0, 1, 1, 2}, {1, 2, 1, 2}, {0, 2, 1, 1}});
    const auto tensor = extract_gots(net, {3}, Mode::undirected);
    const auto o = u3_orbits();
    CHECK(tensor.at(1, 3, o.triangle, o.chain_center) == 1);
    CHECK(tensor.at(0, 3, o.triangle, o.chain_periphery) == 1);
    CHECK(tensor.at(2, 3, o.triangle, o.chain_periphery) == 1);
    CHECK(tensor.total_transitions() == 3);
}

TEST_CASE("static network: only diagonal transitions, T-1 per occurrence") {
    const int T = 5;
    const TemporalNetwork net(3, T, false,
                              {{0, 1, 1, T}, {1, 2, 1, T}, {0, 2, 1, T}});
    const auto tensor = extract_gots(net, {3}, Mode::undirected);
    const auto o = u3_orbits();
    for (NodeId v = 0; v < 3; ++v)
        CHECK(tensor.at(v, 3, o.triangle, o.triangle) == T - 1);
    CHECK(tensor.total_transitions() == 3 * (T - 1));
}

TEST_CASE("a vanished subgraph contributes no transition") {
    // triangle at t=1 only; at t=2 all edges gone
    const TemporalNetwork net(3, 2, false, {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 2, 1, 1}});
    const auto tensor = extract_gots(net, {3}, Mode::undirected);
    CHECK(tensor.total_transitions() == 0);
}

TEST_CASE("gap pairing: occurrences at t=1 and t=3 still pair by default") {
    const TemporalNetwork net(3, 3, false,
                              {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 2, 1, 1},
                               {0, 1, 3, 3}, {1, 2, 3, 3}, {0, 2, 3, 3}});
    const auto loose = extract_gots(net, {3}, Mode::undirected);
    CHECK(loose.total_transitions() == 3);
    GotOptions strict;
    strict.strict_consecutive = true;
    const auto none = extract_gots(net, {3}, Mode::undirected, strict);
    CHECK(none.total_transitions() == 0);
}

TEST_CASE("flatten lengths follow orbit counts") {
    const TemporalNetwork net(5, 2, false, {{0, 1, 1, 2}, {1, 2, 1, 1}, {2, 3, 2, 2}});
    const auto tensor = extract_gots(net, {3, 4}, Mode::undirected);
    CHECK(tensor.feature_length({3}) == 9);
    CHECK(tensor.feature_length({3, 4}) == 130);
    CHECK(tensor.flatten_node(0, {3, 4}).size() == 130);
    CHECK_THROWS_AS(tensor.flatten_node(0, {2}), std::invalid_argument);

    // node 4 participates in nothing
    const auto zero = tensor.flatten_node(4, {3, 4});
    for (double x : zero) CHECK(x == 0.0);
}

TEST_CASE("relabeling nodes permutes the tensor") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 8;
        const auto net = random_temporal_network(rng, n, 4, 0.2, false);
        std::vector<NodeId> perm(n);
        for (NodeId v = 0; v < n; ++v) perm[v] = v;
        rng.shuffle(perm);
        std::vector<Event> relabeled;
        for (const auto& e : net.events())
            relabeled.push_back({perm[e.u], perm[e.v], e.start, e.end});
        const TemporalNetwork permuted(n, net.snapshot_count(), false, std::move(relabeled));

        const auto t0 = extract_gots(net, {3}, Mode::undirected);
        const auto t1 = extract_gots(permuted, {3}, Mode::undirected);
        for (NodeId v = 0; v < n; ++v)
            CHECK(t0.flatten_node(v, {3}) == t1.flatten_node(perm[v], {3}));
    }
}

TEST_CASE("reversing time transposes every matrix") {
    Rng rng(37);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 8, T = 4;
        const auto net = random_temporal_network(rng, n, T, 0.2, false);
        std::vector<Event> reversed;
        for (const auto& e : net.events())
            reversed.push_back({e.u, e.v, T + 1 - e.end, T + 1 - e.start});
        const TemporalNetwork back(n, T, false, std::move(reversed));

        const auto fwd = extract_gots(net, {3}, Mode::undirected);
        const auto rev = extract_gots(back, {3}, Mode::undirected);
        const int orbits = fwd.orbit_count(3);
        for (NodeId v = 0; v < n; ++v)
            for (int i = 0; i < orbits; ++i)
                for (int j = 0; j < orbits; ++j)
                    CHECK(fwd.at(v, 3, i, j) == rev.at(v, 3, j, i));
    }
}

TEST_CASE("directed tensors are relabeling-equivariant and transpose under time reversal") {
    Rng rng(59);
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 7, T = 4;
        const auto net = random_temporal_network(rng, n, T, 0.15, true);

        std::vector<NodeId> perm(n);
        for (NodeId v = 0; v < n; ++v) perm[v] = v;
        rng.shuffle(perm);
        std::vector<Event> relabeled;
        for (const auto& e : net.events())
            relabeled.push_back({perm[e.u], perm[e.v], e.start, e.end});
        const TemporalNetwork permuted(n, T, true, std::move(relabeled));
        const auto t0 = extract_gots(net, {3}, Mode::directed);
        const auto t1 = extract_gots(permuted, {3}, Mode::directed);
        for (NodeId v = 0; v < n; ++v)
            CHECK(t0.flatten_node(v, {3}) == t1.flatten_node(perm[v], {3}));

        std::vector<Event> reversed;
        for (const auto& e : net.events())
            reversed.push_back({e.u, e.v, T + 1 - e.end, T + 1 - e.start});
        const TemporalNetwork back(n, T, true, std::move(reversed));
        const auto rev = extract_gots(back, {3}, Mode::directed);
        const int orbits = t0.orbit_count(3);
        for (NodeId v = 0; v < n; ++v)
            for (int i = 0; i < orbits; ++i)
                for (int j = 0; j < orbits; ++j)
                    CHECK(t0.at(v, 3, i, j) == rev.at(v, 3, j, i));
    }
}

TEST_CASE("extraction equals the census-sort-pair oracle") {
    Rng rng(41);
    int instances = 0;
    while (instances < 25) {
        const int n = 6 + rng.below_int(10);
        const int T = 2 + rng.below_int(4);
        const bool directed = rng.bernoulli(0.4);
        const int k = 3 + (directed ? 0 : rng.below_int(2));
        const auto net = random_temporal_network(rng, n, T, 0.12, directed);
        const Mode mode = directed ? Mode::directed : Mode::undirected;

        const auto tensor = extract_gots(net, {k}, mode);
        const auto oracle = got_oracle(net, {k}, mode);

        long long oracle_total = 0;
        for (const auto& [cell, count] : oracle) {
            const auto [node, kk, from, to] = cell;
            CHECK(tensor.at(node, kk, from, to) == count);
            oracle_total += count;
        }
        CHECK(tensor.total_transitions() == oracle_total);
        ++instances;
    }
}

TEST_CASE("transition mass is k per matched occurrence pair") {
    Rng rng(43);
    const auto net = random_temporal_network(rng, 10, 4, 0.15, false);
    for (int k : {3, 4}) {
        const auto catalog = OrbitCatalog::build(k, Mode::undirected);
        std::map<std::array<NodeId, 4>, int> appearances;
        long long total_appearances = 0;
        for (int t = 1; t <= net.snapshot_count(); ++t)
            for (const auto& occ : brute_force_census(net.snapshot_at(t), catalog)) {
                ++appearances[occ.nodes];
                ++total_appearances;
            }
        // matched pairs = total appearances - distinct node sets
        const long long pairs =
            total_appearances - static_cast<long long>(appearances.size());
        const auto tensor = extract_gots(net, {k}, Mode::undirected);
        CHECK(tensor.total_transitions() == k * pairs);
    }
}

TEST_CASE("strict mode only pairs adjacent snapshots") {
    Rng rng(47);
    const auto net = random_temporal_network(rng, 9, 5, 0.12, false);
    GotOptions strict;
    strict.strict_consecutive = true;
    const auto tensor = extract_gots(net, {3}, Mode::undirected, strict);
    const auto oracle = got_oracle(net, {3}, Mode::undirected, true);
    long long total = 0;
    for (const auto& [cell, count] : oracle) {
        const auto [node, kk, from, to] = cell;
        CHECK(tensor.at(node, kk, from, to) == count);
        total += count;
    }
    CHECK(tensor.total_transitions() == total);
}

TEST_CASE("undirected extraction on a directed network uses the underlying graph") {
    Rng rng(61);
    for (int rep = 0; rep < 8; ++rep) {
        const auto dnet = random_temporal_network(rng, 9, 4, 0.18, true);
        std::vector<Event> undirected_events = dnet.events();
        const TemporalNetwork proj(dnet.n_nodes(), dnet.snapshot_count(), false,
                                   std::move(undirected_events));
        const auto td = extract_gots(dnet, {3, 4}, Mode::undirected);
        const auto tp = extract_gots(proj, {3, 4}, Mode::undirected);
        for (NodeId v = 0; v < dnet.n_nodes(); ++v)
            CHECK(td.flatten_node(v) == tp.flatten_node(v));
    }
}

TEST_CASE("k-set names resolve to modes and sizes") {
    CHECK(parse_kset("u3").mode == Mode::undirected);
    CHECK(parse_kset("u3").ks == std::vector<int>{3});
    CHECK(parse_kset("u34").ks == std::vector<int>{3, 4});
    CHECK(parse_kset("d3").mode == Mode::directed);
    CHECK(parse_kset("d34").ks == std::vector<int>{3, 4});
    CHECK(parse_kset("u3", true).ks == std::vector<int>{2, 3});
    CHECK_THROWS_AS(parse_kset("x9"), std::invalid_argument);
}

TEST_CASE("k=2 blocks extend the feature vector") {
    const TemporalNetwork u(4, 2, false, {{0, 1, 1, 2}});
    const auto tu = extract_gots(u, {2, 3}, Mode::undirected);
    CHECK(tu.feature_length({2, 3}) == 1 + 9);  // 1 undirected 2-node orbit

    const TemporalNetwork d(4, 2, true, {{0, 1, 1, 2}});
    const auto td = extract_gots(d, {2, 3}, Mode::directed);
    CHECK(td.feature_length({2, 3}) == 9 + 900);  // 3 directed 2-node orbits
    // a persisting arc transitions source->source and target->target
    CHECK(td.total_transitions() == 2);
}

TEST_CASE("directed extraction needs a directed network") {
    const TemporalNetwork net(3, 2, false, {{0, 1, 1, 2}});
    CHECK_THROWS_AS(extract_gots(net, {3}, Mode::directed), std::invalid_argument);
}

TEST_CASE("thread count does not change the tensor") {
    Rng rng(53);
    const auto net = random_temporal_network(rng, 12, 5, 0.15, false);
    GotOptions seq, par;
    par.threads = 4;
    const auto a = extract_gots(net, {3, 4}, Mode::undirected, seq);
    const auto b = extract_gots(net, {3, 4}, Mode::undirected, par);
    for (NodeId v = 0; v < net.n_nodes(); ++v)
        CHECK(a.flatten_node(v) == b.flatten_node(v));
}
