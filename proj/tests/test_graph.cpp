#include "cohomord/graph.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace cohomord;

TEST_CASE("fraction graph adjacency follows circular distance", "[graph]") {
    Graph g = fraction_graph(7, 3);
    REQUIRE(g.vertex_count() == 7);
    std::vector<int> nbrs;
    for (int v = 0; v < 7; ++v)
        if (g.adjacent(0, v)) nbrs.push_back(v);
    REQUIRE(nbrs == std::vector<int>{1, 2, 5, 6});
    for (int v = 0; v < 7; ++v) REQUIRE(g.degree(v) == 4);
}

TEST_CASE("fraction graph with unit denominator is edgeless", "[graph]") {
    Graph g = fraction_graph(6, 1);
    REQUIRE(g.vertex_count() == 6);
    REQUIRE(g.edge_count() == 0);
}

TEST_CASE("fraction graph keeps p and q unreduced", "[graph]") {
    Graph g = fraction_graph(10, 4);
    REQUIRE(g.vertex_count() == 10);
    // distance 1..3 on both sides -> 6-regular
    for (int v = 0; v < 10; ++v) REQUIRE(g.degree(v) == 6);
    REQUIRE(g != fraction_graph(5, 2));
}

TEST_CASE("fraction graph rejects slope below two", "[graph]") {
    REQUIRE_THROWS_AS(fraction_graph(5, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(fraction_graph(3, 0), std::invalid_argument);
    REQUIRE_NOTHROW(fraction_graph(4, 2)); // exactly 2 is allowed
}

TEST_CASE("pentagon basics", "[graph]") {
    Graph c5 = fraction_graph(5, 2);
    REQUIRE(c5.vertex_count() == 5);
    REQUIRE(c5.edge_count() == 5);
    REQUIRE(c5.adjacent(0, 1));
    REQUIRE(c5.adjacent(0, 4));
    REQUIRE_FALSE(c5.adjacent(0, 2));
}

TEST_CASE("complement is an involution", "[graph]") {
    std::mt19937 rng(7);
    for (int n : {0, 1, 2, 9, 17}) {
        Graph g = testutil::random_graph(rng, n, 40);
        REQUIRE(complement(complement(g)) == g);
    }
}

TEST_CASE("complement of the pentagon is its own reshuffle", "[graph]") {
    Graph c = complement(fraction_graph(5, 2));
    REQUIRE(c.edge_count() == 5);
    for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}})
        REQUIRE(c.adjacent(u, v));
}

TEST_CASE("strong product of pentagons", "[graph]") {
    Graph c5 = fraction_graph(5, 2);
    Graph p = strong_product(c5, c5);
    REQUIRE(p.vertex_count() == 25);
    for (int v = 0; v < 25; ++v) REQUIRE(p.degree(v) == 8);
    // (u1,u2) ~ (v1,v2) iff both coordinates equal-or-adjacent, tuples distinct
    REQUIRE(p.adjacent(0 * 5 + 0, 1 * 5 + 1));
    REQUIRE(p.adjacent(0 * 5 + 0, 0 * 5 + 1));
    REQUIRE(p.adjacent(0 * 5 + 0, 1 * 5 + 0));
    REQUIRE_FALSE(p.adjacent(0 * 5 + 0, 2 * 5 + 0));
    REQUIRE_FALSE(p.adjacent(0 * 5 + 0, 1 * 5 + 2));
}

TEST_CASE("strong product index layout is left-major", "[graph]") {
    Graph a = empty_graph(2);
    Graph b = complete_graph(3);
    Graph p = strong_product(a, b);
    REQUIRE(p.vertex_count() == 6);
    // edges only within each copy of b
    REQUIRE(p.adjacent(0, 1));
    REQUIRE(p.adjacent(3, 5));
    REQUIRE_FALSE(p.adjacent(0, 3));
    REQUIRE_FALSE(p.adjacent(2, 3));
}

TEST_CASE("disjoint union and join", "[graph]") {
    Graph u = disjoint_union(empty_graph(2), complete_graph(3));
    REQUIRE(u.vertex_count() == 5);
    REQUIRE(u.edge_count() == 3);
    REQUIRE_FALSE(u.adjacent(0, 1));
    REQUIRE(u.adjacent(2, 4));

    Graph j = join(empty_graph(2), empty_graph(3));
    REQUIRE(j.vertex_count() == 5);
    REQUIRE(j.edge_count() == 6); // K_{2,3}
    REQUIRE(j.adjacent(0, 2));
    REQUIRE(j.adjacent(1, 4));
    REQUIRE_FALSE(j.adjacent(0, 1));
    REQUIRE_FALSE(j.adjacent(2, 3));
}

TEST_CASE("power equals iterated strong product", "[graph]") {
    Graph c5 = fraction_graph(5, 2);
    REQUIRE(power(c5, 1) == c5);
    REQUIRE(power(c5, 2) == strong_product(c5, c5));
    REQUIRE(power(c5, 3) == strong_product(strong_product(c5, c5), c5));
    REQUIRE_THROWS_AS(power(c5, 0), std::invalid_argument);
}

TEST_CASE("induced subgraph keeps selected adjacency", "[graph]") {
    Graph c5 = fraction_graph(5, 2);
    std::vector<int> pick{0, 1, 2};
    Graph s = induced_subgraph(c5, pick);
    REQUIRE(s.vertex_count() == 3);
    REQUIRE(s.adjacent(0, 1));
    REQUIRE(s.adjacent(1, 2));
    REQUIRE_FALSE(s.adjacent(0, 2));
    std::vector<int> dup{0, 0};
    REQUIRE_THROWS_AS(induced_subgraph(c5, dup), std::invalid_argument);
}

TEST_CASE("graph rejects self-loops and bad vertices", "[graph]") {
    Graph g(3);
    REQUIRE_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
    REQUIRE_FALSE(g.adjacent(0, 0));
}

TEST_CASE("structural equality ignores labels", "[graph]") {
    Graph a = fraction_graph(5, 2);
    Graph b(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, "other label");
    REQUIRE(a == b);
}

TEST_CASE("product independence lower bound on random graphs", "[graph][independent-set]") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        Graph g = testutil::random_graph(rng, 7, 45);
        Graph h = testutil::random_graph(rng, 6, 45);
        const int ag = testutil::alpha_brute(g);
        const int ah = testutil::alpha_brute(h);
        const int ap = testutil::alpha_brute(strong_product(g, h));
        REQUIRE(ap >= ag * ah);
    }
}
