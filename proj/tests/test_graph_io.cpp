#include "cohomord/graph_io.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cohomord;

TEST_CASE("graph6 frozen vectors", "[graph-io]") {
    // Cross-checked against an independent encoder.
    REQUIRE(encode_graph6(fraction_graph(5, 2)) == "Dhc");
    REQUIRE(encode_graph6(complete_graph(4)) == "C~");
    REQUIRE(encode_graph6(empty_graph(2)) == "A?");
    Graph path7(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
    REQUIRE(encode_graph6(path7) == "FhCGG");
}

TEST_CASE("graph6 decode inverts encode", "[graph-io]") {
    std::mt19937 rng(41);
    for (int n : {0, 1, 2, 13, 40, 62})
        for (int pct : {0, 30, 100}) {
            Graph g = testutil::random_graph(rng, n, pct);
            REQUIRE(decode_graph6(encode_graph6(g)) == g);
        }
}

TEST_CASE("graph6 long form for 63+ vertices", "[graph-io]") {
    Graph g(70);
    g.add_edge(0, 69);
    std::string s = encode_graph6(g);
    REQUIRE(s.substr(0, 4) == "~?@E");
    REQUIRE(decode_graph6(s) == g);
    Graph h(63);
    REQUIRE(decode_graph6(encode_graph6(h)) == h);
}

TEST_CASE("graph6 decode accepts header and trailing newline", "[graph-io]") {
    REQUIRE(decode_graph6(">>graph6<<A?\n") == empty_graph(2));
}

TEST_CASE("graph6 decode rejects malformed input", "[graph-io]") {
    REQUIRE_THROWS_AS(decode_graph6(""), std::invalid_argument);
    REQUIRE_THROWS_AS(decode_graph6("Dh"), std::invalid_argument);      // truncated
    REQUIRE_THROWS_AS(decode_graph6("Dhcc"), std::invalid_argument);    // trailing
    REQUIRE_THROWS_AS(decode_graph6("A\x07"), std::invalid_argument);   // byte out of range
    REQUIRE_THROWS_AS(decode_graph6("A@"), std::invalid_argument);      // nonzero padding
    REQUIRE_THROWS_AS(decode_graph6("~~A?????"), std::invalid_argument);
}

TEST_CASE("json edge list round-trip", "[graph-io]") {
    std::mt19937 rng(43);
    for (int n : {0, 1, 6, 21}) {
        Graph g = testutil::random_graph(rng, n, 35);
        REQUIRE(graph_from_json(graph_to_json(g)) == g);
    }
    Graph c5 = fraction_graph(5, 2);
    auto j = graph_to_json(c5);
    REQUIRE(j["n"] == 5);
    REQUIRE(j["edges"].size() == 5);
}

TEST_CASE("json edge list rejects malformed documents", "[graph-io]") {
    using nlohmann::json;
    REQUIRE_THROWS_AS(graph_from_json(json::parse(R"({"edges": []})")), std::invalid_argument);
    REQUIRE_THROWS_AS(graph_from_json(json::parse(R"({"n": -1, "edges": []})")), std::invalid_argument);
    REQUIRE_THROWS_AS(graph_from_json(json::parse(R"({"n": 2, "edges": [[0]]})")), std::invalid_argument);
    REQUIRE_THROWS_AS(graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 2]]})")), std::invalid_argument);
    REQUIRE_THROWS_AS(graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 0]]})")), std::invalid_argument);
}
