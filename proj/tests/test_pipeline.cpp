#include "cohomord/pipeline.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

using namespace cohomord;

namespace {

LineTable depth1_table() {
    return build_line_table(1, Rational(9, 4), Rational(5, 2), Rational(4), Rational(4),
                            Rational(7, 3));
}

FinitePreorder chain(int n) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i) {
        names.push_back(std::string(1, static_cast<char>('a' + i)));
        if (i > 0) rel.emplace_back(i - 1, i);
    }
    return make_finite_preorder(names, rel);
}

const Certificate& cert_for(const EmbeddingReport& rep, const std::string& src,
                            const std::string& dst) {
    const int i = rep.preorder.index_of(src);
    const int j = rep.preorder.index_of(dst);
    for (const auto& c : rep.certificates)
        if (c.src == i && c.dst == j) return c;
    FAIL("no certificate for (" + src + ", " + dst + ")");
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("word and family graphs follow the table", "[pipeline]") {
    const LineTable tbl = depth1_table();
    CHECK(to_string(*build_word_graph("", tbl)) == "F(4) * g | F(4)");
    CHECK(to_string(*build_word_graph("0", tbl)) == "F(26/7) * g | F(3)");
    CHECK(to_string(*build_word_graph("1", tbl)) == "F(7/2) * g | F(7/2)");
    CHECK_THROWS_AS(build_word_graph("00", tbl), std::invalid_argument);

    const Graph gen = generator_graph();
    CHECK(gen.vertex_count() == 5);
    CHECK(to_string(*generator_expression()) == "F(5/2)");

    const auto fam = make_antichain_family({"1", "0"});
    CHECK(to_string(*build_family_graph(fam, tbl)) ==
          "F(26/7) * g | F(3) + F(7/2) * g | F(7/2)");
    CHECK(materialized_size(*build_family_graph(make_antichain_family({"0"}), tbl), gen) == 133);
    CHECK(materialized_size(*build_family_graph(make_antichain_family({"1"}), tbl), gen) == 42);
    CHECK(materialized_size(*build_family_graph(fam, tbl), gen) == 175);
    CHECK_THROWS_AS(build_family_graph(AntichainFamily{}, tbl), std::invalid_argument);
}

TEST_CASE("two-chain embedding pins its certificates", "[pipeline]") {
    const auto rep = embed_preorder(chain(2));
    REQUIRE(rep.preorder.size() == 2);
    REQUIRE(rep.families.size() == 2);
    CHECK(rep.families[0].words == std::vector<Word>{"0"});
    CHECK(rep.families[1].words == (std::vector<Word>{"0", "1"}));
    REQUIRE(rep.certificates.size() == 2);

    const auto& pos = cert_for(rep, "a", "b");
    REQUIRE(pos.positive);
    REQUIRE(pos.pos.has_value());
    REQUIRE(pos.pos->summands.size() == 1);
    CHECK(pos.pos->summands[0].src_word == "0");
    CHECK(pos.pos->summands[0].dst_word == "0");
    CHECK(pos.pos->summands[0].src_line == pos.pos->summands[0].dst_line);
    // 133 + 175 vertices is well under the cap, so the explicit map must be
    // present; the shared word graph sits first in the target layout, so the
    // map is the identity inclusion.
    REQUIRE(pos.pos->map.has_value());
    CHECK(verify_cohomomorphism(*pos.pos->map));
    CHECK(pos.pos->map->source.vertex_count() == 133);
    CHECK(pos.pos->map->target.vertex_count() == 175);
    for (std::size_t v = 0; v < pos.pos->map->assignment.size(); ++v)
        REQUIRE(pos.pos->map->assignment[v] == static_cast<int>(v));

    const auto& neg = cert_for(rep, "b", "a");
    REQUIRE_FALSE(neg.positive);
    REQUIRE(neg.neg.has_value());
    CHECK(neg.neg->witness_word == "1");
    CHECK(neg.neg->witness_value == Rational(55, 24));
    CHECK(neg.neg->lhs == Rational(553, 48));
    CHECK(neg.neg->rhs == Rational(967, 84));
    CHECK(neg.neg->lhs > neg.neg->rhs);
    CHECK_FALSE(neg.neg->search_confirmed.has_value());

    CHECK(verify_report(rep).ok());
}

TEST_CASE("two-antichain embedding is negative both ways", "[pipeline]") {
    const auto rep = embed_preorder(make_finite_preorder({"x", "y"}, {}));
    REQUIRE(rep.certificates.size() == 2);
    for (const auto& c : rep.certificates) CHECK_FALSE(c.positive);

    const auto& xy = cert_for(rep, "x", "y");
    CHECK(xy.neg->witness_word == "0");
    CHECK(xy.neg->witness_value == Rational(19, 8));
    CHECK(xy.neg->lhs == Rational(331, 28));
    CHECK(xy.neg->rhs == Rational(189, 16));

    const auto& yx = cert_for(rep, "y", "x");
    CHECK(yx.neg->witness_word == "1");
    CHECK(yx.neg->lhs == Rational(553, 48));
    CHECK(yx.neg->rhs == Rational(967, 84));

    CHECK(verify_report(rep).ok());
}

TEST_CASE("three-chain embedding verifies and matches the model", "[pipeline]") {
    const auto rep = embed_preorder(chain(3));
    REQUIRE(rep.certificates.size() == 6);
    int positives = 0;
    for (const auto& c : rep.certificates) positives += c.positive ? 1 : 0;
    CHECK(positives == 3);
    CHECK(cert_for(rep, "b", "a").neg->witness_word == "01");
    CHECK(cert_for(rep, "c", "b").neg->witness_word == "10");
    CHECK(cert_for(rep, "c", "a").neg->witness_word == "01");
    CHECK(verify_report(rep).ok());

    // model cross-check: positive pairs are dominated pointwise across the
    // interval, negative pairs separate exactly at the recorded witness
    const std::vector<Rational> grid = {Rational(9, 4), Rational(7, 3), Rational(12, 5),
                                        Rational(5, 2)};
    for (const auto& c : rep.certificates) {
        const auto src_expr = build_family_graph(rep.families[c.src], rep.table);
        const auto dst_expr = build_family_graph(rep.families[c.dst], rep.table);
        if (c.positive) {
            for (const auto& r : grid)
                CHECK(eval_spectral(*src_expr, r) <= eval_spectral(*dst_expr, r));
        } else {
            CHECK(eval_spectral(*dst_expr, c.neg->witness_value) == c.neg->rhs);
            CHECK(eval_spectral(*src_expr, c.neg->witness_value) >= c.neg->lhs);
        }
    }
}

TEST_CASE("subset order of a two-element set embeds", "[pipeline]") {
    const auto rep = embed_preorder(make_finite_preorder(
        {"{}", "{1}", "{2}", "{12}"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    REQUIRE(rep.certificates.size() == 12);
    int positives = 0;
    for (const auto& c : rep.certificates) positives += c.positive ? 1 : 0;
    CHECK(positives == 5);
    CHECK(rep.families[3].words == (std::vector<Word>{"00", "01", "10", "11"}));
    CHECK(verify_report(rep).ok());
}

TEST_CASE("report serialization is deterministic and round-trips", "[pipeline]") {
    const auto rep1 = embed_preorder(chain(2));
    const auto rep2 = embed_preorder(chain(2));
    const std::string bytes1 = report_to_json(rep1).dump(2);
    const std::string bytes2 = report_to_json(rep2).dump(2);
    REQUIRE(bytes1 == bytes2);

    const auto doc = report_to_json(rep1);
    CHECK(doc.at("format") == "cohomord-report-v1");
    CHECK(doc.at("generator") == "F(5/2)");
    CHECK(doc.at("families").at("a") == nlohmann::ordered_json::array({"0"}));
    CHECK(doc.at("families").at("b") == nlohmann::ordered_json::array({"0", "1"}));
    CHECK(doc.at("word_graphs").at("0") == "F(26/7) * g | F(3)");
    CHECK(doc.at("word_graphs").at("1") == "F(7/2) * g | F(7/2)");
    CHECK_FALSE(doc.at("word_graphs").contains("")); // root word is unused here
    CHECK(doc.at("certificates").size() == 2);
    CHECK(doc.at("certificates").at(0).at("kind") == "positive");
    CHECK(doc.at("certificates").at(0).contains("map"));
    CHECK(doc.at("certificates").at(1).at("witness_value") == "55/24");
    CHECK(doc.at("certificates").at(1).at("lhs") == "553/48");
    CHECK(doc.at("certificates").at(1).at("rhs") == "967/84");

    const auto back = report_from_json(nlohmann::json::parse(bytes1));
    CHECK(report_to_json(back).dump(2) == bytes1);
    CHECK(verify_report(back).ok());

    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{\"format\":\"nope\"}")),
                    std::invalid_argument);
}

TEST_CASE("verification pinpoints tampered certificates", "[pipeline]") {
    const auto rep = embed_preorder(chain(2));
    const auto clean = report_to_json(rep);

    SECTION("altered negative value") {
        auto doc = clean;
        doc["certificates"][1]["rhs"] = "1/2";
        const auto res = verify_report(report_from_json(doc));
        REQUIRE_FALSE(res.ok());
        for (const auto& f : res.failures) {
            CAPTURE(f);
            CHECK(f.find("(b -> a)") != std::string::npos);
        }
        bool rhs_flagged = false;
        for (const auto& f : res.failures)
            rhs_flagged |= f.find("rhs") != std::string::npos;
        CHECK(rhs_flagged);
    }

    SECTION("removed explicit map") {
        auto doc = clean;
        doc["certificates"][0].erase("map");
        const auto res = verify_report(report_from_json(doc));
        REQUIRE(res.failures.size() == 1);
        CHECK(res.failures[0].find("(a -> b)") != std::string::npos);
        CHECK(res.failures[0].find("map") != std::string::npos);
    }

    SECTION("covered witness word") {
        auto doc = clean;
        doc["certificates"][1]["witness_word"] = "0";
        const auto res = verify_report(report_from_json(doc));
        REQUIRE_FALSE(res.ok());
        for (const auto& f : res.failures) {
            CAPTURE(f);
            CHECK(f.find("(b -> a)") != std::string::npos);
        }
    }

    SECTION("corrupted table entry") {
        auto doc = clean;
        doc["line_table"]["entries"]["0"]["a"] = "3";
        CHECK_FALSE(verify_report(report_from_json(doc)).ok());
    }

    SECTION("scrambled vertex map") {
        auto doc = clean;
        doc["certificates"][0]["map"]["map"][0] = 170;
        doc["certificates"][0]["map"]["map"][1] = 170;
        const auto res = verify_report(report_from_json(doc));
        REQUIRE_FALSE(res.ok());
        for (const auto& f : res.failures) {
            CAPTURE(f);
            CHECK(f.find("(a -> b)") != std::string::npos);
        }
    }
}

TEST_CASE("direct antichain families embed", "[pipeline]") {
    const auto rep = embed_families(
        {"L", "R"}, {make_antichain_family({"0"}), make_antichain_family({"0", "1"})});
    REQUIRE(rep.certificates.size() == 2);
    CHECK(cert_for(rep, "L", "R").positive);
    CHECK_FALSE(cert_for(rep, "R", "L").positive);
    CHECK(verify_report(rep).ok());

    // a strict prefix pair: the longer word sits strictly below
    const auto deep = embed_families(
        {"deep", "shallow"},
        {make_antichain_family({"011"}), make_antichain_family({"01"})});
    const auto& pos = cert_for(deep, "deep", "shallow");
    REQUIRE(pos.positive);
    REQUIRE(pos.pos->summands.size() == 1);
    CHECK(pos.pos->summands[0].src_word == "011");
    CHECK(pos.pos->summands[0].dst_word == "01");
    CHECK(pos.pos->summands[0].src_line.slope < pos.pos->summands[0].dst_line.slope);
    CHECK(pos.pos->summands[0].src_line.intercept < pos.pos->summands[0].dst_line.intercept);
    const auto& neg = cert_for(deep, "shallow", "deep");
    REQUIRE_FALSE(neg.positive);
    CHECK(neg.neg->witness_word == "01");
    CHECK(verify_report(deep).ok());

    CHECK_THROWS_AS(embed_families({"only"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(embed_families({"x", "x"}, {make_antichain_family({"0"}),
                                                make_antichain_family({"1"})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(embed_families({"e"}, {AntichainFamily{}}), std::invalid_argument);
}

TEST_CASE("caps and budgets are enforced", "[pipeline]") {
    PipelineConfig tiny;
    tiny.element_cap = 2;
    CHECK_THROWS_AS(embed_preorder(chain(3), tiny), cap_exceeded);

    PipelineConfig bad;
    bad.materialize_cap = 0;
    CHECK_THROWS_AS(embed_preorder(chain(2), bad), std::invalid_argument);

    // confirmation is restricted to instances under its own cap; the default
    // family graphs are all larger, so the flag leaves no trace here
    PipelineConfig confirm;
    confirm.confirm_negative = true;
    const auto rep = embed_preorder(make_finite_preorder({"x", "y"}, {}), confirm);
    for (const auto& c : rep.certificates) {
        REQUIRE_FALSE(c.positive);
        CHECK_FALSE(c.neg->search_confirmed.has_value());
    }
    CHECK(verify_report(rep).ok());
}

TEST_CASE("single element and empty preorders embed trivially", "[pipeline]") {
    const auto one = embed_preorder(chain(1));
    CHECK(one.certificates.empty());
    CHECK(one.families.size() == 1);
    CHECK(one.families[0].words == std::vector<Word>{"0"});
    CHECK(verify_report(one).ok());

    const auto zero = embed_preorder(FinitePreorder{});
    CHECK(zero.certificates.empty());
    CHECK(verify_report(zero).ok());
    const std::string bytes = report_to_json(zero).dump();
    CHECK(report_to_json(report_from_json(nlohmann::json::parse(bytes))).dump() == bytes);
}

TEST_CASE("three expressions cross at one point yet a union collapses",
          "[pipeline]") {
    const auto rep = demo_counterexample();
    REQUIRE(rep.exprs.size() == 3);
    CHECK(to_string(*rep.exprs[0]) == "F(6) * g | F(7)");
    CHECK(to_string(*rep.exprs[1]) == "F(3) * g | F(14)");
    CHECK(to_string(*rep.exprs[2]) == "F(21)");
    CHECK(rep.intersection == Rational(7, 3));
    CHECK(rep.dominance);
    REQUIRE(rep.incomparabilities.size() == 6);

    auto expect = [&](int src, int dst, const Rational& point, const Rational& lhs,
                      const Rational& rhs) {
        for (const auto& ev : rep.incomparabilities)
            if (ev.src == src && ev.dst == dst) {
                CHECK(ev.point == point);
                CHECK(ev.lhs == lhs);
                CHECK(ev.rhs == rhs);
                CHECK(ev.lhs > ev.rhs);
                return;
            }
        FAIL("missing witness for (" << src << ", " << dst << ")");
    };
    expect(0, 1, Rational(12, 5), Rational(107, 5), Rational(106, 5));
    expect(1, 0, Rational(9, 4), Rational(83, 4), Rational(41, 2));
    expect(0, 2, Rational(12, 5), Rational(107, 5), Rational(21));
    expect(2, 0, Rational(9, 4), Rational(21), Rational(41, 2));
    expect(1, 2, Rational(12, 5), Rational(106, 5), Rational(21));
    expect(2, 1, Rational(9, 4), Rational(21), Rational(83, 4));

    // the dominance is an exact envelope comparison over the interval
    const auto low = to_max_poly(*join_expr(rep.exprs[0], rep.exprs[1]));
    const auto high = to_max_poly(*join_expr(rep.exprs[0], rep.exprs[2]));
    CHECK_FALSE(envelope_leq(low, high, Rational(9, 4), Rational(5, 2)).has_value());
}

TEST_CASE("antichains of every size share one crossing point", "[pipeline]") {
    const auto rep = demo_antichain(4);
    REQUIRE(rep.lines.size() == 4);
    REQUIRE(rep.exprs.size() == 4);
    CHECK(rep.common_point == Rational(7, 3));
    CHECK(rep.common_value == Rational(23, 3));
    REQUIRE(rep.incomparabilities.size() == 12);
    for (const auto& ev : rep.incomparabilities) CHECK(ev.lhs > ev.rhs);
    for (const auto& e : rep.exprs)
        CHECK(eval_spectral(*e, rep.common_point) == rep.common_value);

    for (int n = 1; n <= 10; ++n) {
        const auto r = demo_antichain(n);
        CHECK(r.incomparabilities.size() == static_cast<std::size_t>(n) * (n - 1));
        for (const Line& l : r.lines) {
            CHECK(l.slope >= 2);
            CHECK(l.intercept >= 2);
        }
    }
    CHECK_THROWS_AS(demo_antichain(0), std::invalid_argument);
}

TEST_CASE("dyadic derivations recurse to the base", "[pipeline]") {
    const auto four = xif_derivation(4, 1);
    CHECK(four.rule == DerivationNode::Rule::base);
    CHECK(four.value == Rational(4));
    CHECK(validate_derivation(four));

    const auto tree = xif_derivation(8, 3);
    REQUIRE(tree.rule == DerivationNode::Rule::odd_split);
    CHECK(tree.value == Rational(8, 3));
    REQUIRE(tree.children.size() == 2);
    const auto& lo = tree.children[0];
    CHECK(lo.p == 8);
    CHECK(lo.q == 2);
    REQUIRE(lo.rule == DerivationNode::Rule::halve);
    CHECK(lo.children[0].p == 4);
    CHECK(lo.children[0].q == 1);
    CHECK(lo.children[0].rule == DerivationNode::Rule::base);
    const auto& hi = tree.children[1];
    CHECK(hi.p == 8);
    CHECK(hi.q == 4);
    REQUIRE(hi.rule == DerivationNode::Rule::halve);
    CHECK(hi.children[0].p == 4);
    CHECK(hi.children[0].q == 2);
    CHECK(hi.children[0].children[0].p == 2);
    CHECK(hi.children[0].children[0].q == 1);
    CHECK(validate_derivation(tree));

    const auto big = xif_derivation(16, 5);
    REQUIRE(big.rule == DerivationNode::Rule::odd_split);
    CHECK(big.children[0].q == 4);
    CHECK(big.children[1].q == 6);
    CHECK(validate_derivation(big));

    for (long long p = 2; p <= 16; p *= 2)
        for (long long q = 1; q <= p / 2; ++q) CHECK(validate_derivation(xif_derivation(p, q)));

    CHECK_THROWS_AS(xif_derivation(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(xif_derivation(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(xif_derivation(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(xif_derivation(1, 1), std::invalid_argument);

    auto tampered = xif_derivation(8, 3);
    tampered.children[0].q = 3;
    CHECK_FALSE(validate_derivation(tampered));
    auto wrong_value = xif_derivation(8, 3);
    wrong_value.value = Rational(3);
    CHECK_FALSE(validate_derivation(wrong_value));

    const auto j = derivation_to_json(xif_derivation(8, 3));
    CHECK(j.at("rule") == "odd-split");
    CHECK(j.at("value") == "8/3");
    CHECK(j.at("children").size() == 2);
    CHECK(j.at("children").at(0).at("rule") == "halve");
}

TEST_CASE("dyadic approach finds the least doubling", "[pipeline]") {
    const auto exact = dyadic_approach(2, 1, Rational(1, 100));
    CHECK(exact.n == 1);
    CHECK(exact.q == 1);

    const auto pent = dyadic_approach(5, 2, Rational(1, 10));
    CHECK(pent.n == 5);
    CHECK(pent.q == 13);
    CHECK(Rational(32, 13) <= Rational(5, 2));
    CHECK(Rational(32, 13) >= Rational(5, 2) - Rational(1, 10));

    CHECK_THROWS_AS(dyadic_approach(3, 2, Rational(1, 10)), std::invalid_argument);
    CHECK_THROWS_AS(dyadic_approach(5, 2, Rational(0)), std::invalid_argument);

    std::mt19937 rng(20240816);
    for (int trial = 0; trial < 50; ++trial) {
        const long long q = 1 + static_cast<long long>(rng() % 10);
        const long long p = 2 * q + static_cast<long long>(rng() % 21);
        const Rational eps(1, 1 + static_cast<int>(rng() % 50));
        const auto res = dyadic_approach(p, q, eps);
        const Rational target(p, q);
        const Int power = Int(1) << res.n;
        REQUIRE(res.q >= 1);
        CHECK(Int(res.q) <= (Int(1) << (res.n - 1)));
        const Rational approx(power, Int(res.q));
        CHECK(approx <= target);
        CHECK(approx >= target - eps);
        for (int m = 1; m < res.n; ++m) {
            const Int pw = Int(1) << m;
            const Int qm = ceil_div(pw * q, Int(p));
            const bool fits = qm <= (Int(1) << (m - 1));
            const bool close = fits && Rational(pw, qm) >= target - eps;
            CHECK_FALSE(close);
        }
    }
}
