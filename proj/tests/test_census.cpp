#include <doctest.h>

#include "tempalign/census.hpp"

#include <map>
#include <set>

#include "helpers.hpp"

using namespace tempalign;
using namespace testutil;

namespace {

std::set<std::array<NodeId, 4>> node_sets(const std::vector<OrbitOccurrence>& occs) {
    std::set<std::array<NodeId, 4>> sets;
    for (const auto& occ : occs) sets.insert(occ.nodes);
    return sets;
}

std::multiset<OrbitOccurrence> as_multiset(std::vector<OrbitOccurrence> occs) {
    return {occs.begin(), occs.end()};
}

}  // namespace

TEST_CASE("triangle snapshot: one occurrence, all positions in the same orbit") {
    const auto catalog = OrbitCatalog::build(3, Mode::undirected);
    const auto snap = make_snapshot(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto occs = enumerate_occurrences(snap, catalog);
    REQUIRE(occs.size() == 1);
    CHECK(occs[0].nodes == std::array<NodeId, 4>{0, 1, 2, 0});
    CHECK(occs[0].orbits[0] == occs[0].orbits[1]);
    CHECK(occs[0].orbits[1] == occs[0].orbits[2]);
}

TEST_CASE("4-node path: the two 3-node windows, centers in the middle") {
    const auto catalog = OrbitCatalog::build(3, Mode::undirected);
    const auto snap = make_snapshot(4, {{0, 1}, {1, 2}, {2, 3}});
    auto occs = enumerate_occurrences(snap, catalog);
    CHECK(as_multiset(occs) == as_multiset(brute_force_census(snap, catalog)));
    REQUIRE(occs.size() == 2);
    std::sort(occs.begin(), occs.end());
    CHECK(occs[0].nodes == std::array<NodeId, 4>{0, 1, 2, 0});
    CHECK(occs[1].nodes == std::array<NodeId, 4>{1, 2, 3, 0});
    // center of {0,1,2} is node 1; center of {1,2,3} is node 2
    CHECK(occs[0].orbits[0] == occs[0].orbits[2]);
    CHECK(occs[0].orbits[1] != occs[0].orbits[0]);
    CHECK(occs[0].orbits[1] == occs[1].orbits[1]);
    CHECK(occs[1].orbits[0] == occs[1].orbits[2]);
}

TEST_CASE("5-node star at k=4: C(4,3) windows, hub always node 0") {
    const auto catalog = OrbitCatalog::build(4, Mode::undirected);
    const auto snap = make_snapshot(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto occs = enumerate_occurrences(snap, catalog);
    CHECK(as_multiset(occs) == as_multiset(brute_force_census(snap, catalog)));
    REQUIRE(occs.size() == 4);
    for (const auto& occ : occs) {
        CHECK(occ.nodes[0] == 0);
        CHECK(occ.orbits[1] == occ.orbits[2]);
        CHECK(occ.orbits[2] == occ.orbits[3]);
        CHECK(occ.orbits[0] != occ.orbits[1]);
    }
}

TEST_CASE("K5 at k=4: five occurrences, clique orbits everywhere") {
    const auto catalog = OrbitCatalog::build(4, Mode::undirected);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < 5; ++u)
        for (NodeId v = u + 1; v < 5; ++v) edges.emplace_back(u, v);
    const auto snap = make_snapshot(5, edges);
    const auto occs = brute_force_census(snap, catalog);
    REQUIRE(occs.size() == 5);
    const auto clique_orbit = occs[0].orbits[0];
    for (const auto& occ : occs)
        for (int i = 0; i < 4; ++i) CHECK(occ.orbits[i] == clique_orbit);
}

TEST_CASE("empty snapshot yields an empty census") {
    const auto catalog = OrbitCatalog::build(3, Mode::undirected);
    const auto snap = make_snapshot(6, {});
    CHECK(enumerate_occurrences(snap, catalog).empty());
    CHECK(brute_force_census(snap, catalog).empty());
}

TEST_CASE("brute force refuses large instances") {
    const auto catalog = OrbitCatalog::build(3, Mode::undirected);
    const auto snap = make_snapshot(26, {{0, 1}});
    CHECK_THROWS_AS(brute_force_census(snap, catalog), std::invalid_argument);
}

TEST_CASE("enumeration matches the subset oracle on random snapshots") {
    Rng rng(2024);
    int instances = 0;
    while (instances < 60) {
        const int n = 5 + rng.below_int(14);
        const double p = 0.05 + 0.45 * rng.uniform();
        const bool directed = rng.bernoulli(0.5);
        const int k = 3 + rng.below_int(2);
        const auto snap = random_snapshot(rng, n, p, directed);
        const auto catalog =
            OrbitCatalog::build(k, directed ? Mode::directed : Mode::undirected);
        auto fast = enumerate_occurrences(snap, catalog);
        auto slow = brute_force_census(snap, catalog);
        CHECK(as_multiset(fast) == as_multiset(slow));
        CHECK(node_sets(fast).size() == fast.size());  // no duplicate node sets
        ++instances;
    }
}

TEST_CASE("per-node orbit touches reproduce hand GDV counts") {
    // v (node 0) sits in one triangle {0,1,2} and touches two 3-chains as a
    // periphery node via the pendant edges 1-3 and 2-4
    const auto snap = make_snapshot(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}});

    const auto cat2 = OrbitCatalog::build(2, Mode::undirected);
    int degree_touches = 0;
    for (const auto& occ : enumerate_occurrences(snap, cat2))
        for (int i = 0; i < 2; ++i)
            if (occ.nodes[i] == 0) ++degree_touches;
    CHECK(degree_touches == 2);  // orbit a

    const auto cat3 = OrbitCatalog::build(3, Mode::undirected);
    const auto chain = cat3.classify(GraphletCode{1} << pair_bit_undirected(3, 0, 1) |
                                     GraphletCode{1} << pair_bit_undirected(3, 1, 2));
    const int center_orbit = chain[1];
    const int periphery_orbit = chain[0];
    const auto tri = cat3.classify((GraphletCode{1} << pair_bit_undirected(3, 0, 1)) |
                                   (GraphletCode{1} << pair_bit_undirected(3, 1, 2)) |
                                   (GraphletCode{1} << pair_bit_undirected(3, 0, 2)));
    const int triangle_orbit = tri[0];

    std::map<int, int> touches;  // orbit -> count for node 0
    for (const auto& occ : enumerate_occurrences(snap, cat3))
        for (int i = 0; i < 3; ++i)
            if (occ.nodes[i] == 0) ++touches[occ.orbits[i]];
    CHECK(touches[center_orbit] == 0);     // orbit b
    CHECK(touches[periphery_orbit] == 2);  // orbit c
    CHECK(touches[triangle_orbit] == 1);   // orbit d
}

TEST_CASE("directed census distinguishes arc directions") {
    const auto catalog = OrbitCatalog::build(3, Mode::directed);
    // out-star 0->1, 0->2 versus in-star 1->0, 2->0
    const auto out_star = enumerate_occurrences(make_snapshot(3, {{0, 1}, {0, 2}}, true), catalog);
    const auto in_star = enumerate_occurrences(make_snapshot(3, {{1, 0}, {2, 0}}, true), catalog);
    REQUIRE(out_star.size() == 1);
    REQUIRE(in_star.size() == 1);
    CHECK(out_star[0].orbits[0] != in_star[0].orbits[0]);
}
