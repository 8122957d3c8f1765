#pragma once

#include "cohomord/cohom_search.hpp"
#include "cohomord/errors.hpp"
#include "cohomord/graph.hpp"
#include "cohomord/graph_expr.hpp"
#include "cohomord/line_table.hpp"
#include "cohomord/rational.hpp"
#include "cohomord/word_order.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cohomord {

struct PipelineConfig {
    Rational interval_s = Rational(9, 4);
    Rational interval_t = Rational(5, 2);
    Rational seed_a = Rational(4);
    Rational seed_b = Rational(4);
    Rational seed_r = Rational(7, 3);
    int element_cap = 8;
    int materialize_cap = 5000;
    long long node_budget = 10'000'000;
    bool confirm_negative = false; // search-based confirmation of Negative pairs
    int confirm_cap = 64;          // ...only when both sides materialize this small
};

// The fixed generator: C_5 as a fraction graph, the pentagon whose spectral
// gap the whole interval construction lives in.
inline ExprPtr generator_expression() { return fraction_atom(Int(5), Int(2)); }
inline Graph generator_graph() { return fraction_graph(5, 2); }

// G_w: the product of E_{a_w} with the generator, plus an E_{b_w} summand.
inline ExprPtr build_word_graph(const Word& w, const LineTable& tbl) {
    auto it = tbl.entries.find(w);
    if (it == tbl.entries.end())
        throw std::invalid_argument("build_word_graph: word \"" + w + "\" not in table");
    const Line& l = it->second.line;
    return disjoint_union_expr(
        strong_product_expr(fraction_atom(numerator(l.slope), denominator(l.slope)),
                            generator_atom()),
        fraction_atom(numerator(l.intercept), denominator(l.intercept)));
}

// G_A: join of the word graphs of A, in shortlex order.
inline ExprPtr build_family_graph(const AntichainFamily& a, const LineTable& tbl) {
    if (a.words.empty())
        throw std::invalid_argument("build_family_graph: family must be non-empty");
    ExprPtr e = build_word_graph(a.words.front(), tbl);
    for (std::size_t i = 1; i < a.words.size(); ++i)
        e = join_expr(std::move(e), build_word_graph(a.words[i], tbl));
    return e;
}

// One source-word-to-target-word component of a Positive certificate: the
// coefficientwise inequalities that make the two circulant maps exist.
struct SummandMap {
    Word src_word;
    Word dst_word;
    Line src_line;
    Line dst_line;
};

struct PositiveCertificate {
    std::vector<SummandMap> summands;  // one per word of the source family
    std::optional<VertexMap> map;      // verified explicit map, when small enough
};

struct NegativeCertificate {
    Word witness_word;      // a in the source family with nothing above it opposite
    Rational witness_value; // r_a
    Rational lhs;           // l_a(r_a)
    Rational rhs;           // max over target words b of l_b(r_a); lhs > rhs
    std::optional<bool> search_confirmed; // present when the optional search ran
};

struct Certificate {
    int src = 0;
    int dst = 0;
    bool positive = false;
    std::optional<PositiveCertificate> pos;
    std::optional<NegativeCertificate> neg;
};

struct EmbeddingReport {
    PipelineConfig config;
    FinitePreorder preorder;
    std::vector<AntichainFamily> families; // aligned with preorder.elements
    LineTable table;
    std::vector<Certificate> certificates; // ordered by (src, dst)
};

namespace detail {

// Vertex layout of a materialized family graph: per word (shortlex order),
// first the product block E_p x generator (pair (i, h) at i*|gen| + h), then
// the E_q block; words are concatenated left to right.
struct family_layout {
    struct part {
        long long offset;
        long long product_vertices;
        Int p_num, p_den, q_num, q_den;
    };
    std::vector<part> parts; // aligned with the family's words
    long long total = 0;
};

inline family_layout layout_family(const AntichainFamily& fam, const LineTable& tbl,
                                   int generator_size) {
    family_layout lay;
    long long offset = 0;
    for (const Word& w : fam.words) {
        const Line& l = tbl.entries.at(w).line;
        family_layout::part pt;
        pt.offset = offset;
        pt.p_num = numerator(l.slope);
        pt.p_den = denominator(l.slope);
        pt.q_num = numerator(l.intercept);
        pt.q_den = denominator(l.intercept);
        pt.product_vertices = pt.p_num.convert_to<long long>() * generator_size;
        offset += pt.product_vertices + pt.q_num.convert_to<long long>();
        lay.parts.push_back(std::move(pt));
    }
    lay.total = offset;
    return lay;
}

// Assembles the explicit cohomomorphism between two materialized family
// graphs from per-summand circulant maps tensored with the generator
// identity.  Only called when both sides fit the materialization cap.
inline VertexMap assemble_positive_map(const AntichainFamily& src_fam,
                                       const AntichainFamily& dst_fam,
                                       const std::vector<SummandMap>& summands,
                                       const LineTable& tbl, const PipelineConfig& cfg,
                                       const Graph& src_graph, const Graph& dst_graph) {
    const Graph gen = generator_graph();
    const family_layout src_lay = layout_family(src_fam, tbl, gen.vertex_count());
    const family_layout dst_lay = layout_family(dst_fam, tbl, gen.vertex_count());

    VertexMap out;
    out.source = src_graph;
    out.target = dst_graph;
    out.assignment.assign(static_cast<std::size_t>(src_lay.total), -1);

    search_options so;
    so.node_budget = cfg.node_budget;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const auto& sm = summands[k];
        const auto& sp = src_lay.parts[k];
        std::size_t dst_index = 0;
        while (dst_index < dst_fam.words.size() && dst_fam.words[dst_index] != sm.dst_word)
            ++dst_index;
        if (dst_index == dst_fam.words.size())
            throw std::logic_error("positive certificate: target word missing from family");
        const auto& dp = dst_lay.parts[dst_index];

        auto phi = circular_map(sp.p_num.convert_to<long long>(), sp.p_den.convert_to<long long>(),
                                dp.p_num.convert_to<long long>(), dp.p_den.convert_to<long long>(),
                                so);
        auto psi = circular_map(sp.q_num.convert_to<long long>(), sp.q_den.convert_to<long long>(),
                                dp.q_num.convert_to<long long>(), dp.q_den.convert_to<long long>(),
                                so);
        if (!phi || !psi)
            throw std::logic_error("positive certificate: circulant map vanished despite the "
                                   "coefficient inequalities");
        const long long p_src = sp.p_num.convert_to<long long>();
        const long long q_src = sp.q_num.convert_to<long long>();
        for (long long i = 0; i < p_src; ++i)
            for (int h = 0; h < gen.vertex_count(); ++h)
                out.assignment[static_cast<std::size_t>(sp.offset + i * gen.vertex_count() + h)] =
                    static_cast<int>(dp.offset +
                                     static_cast<long long>(phi->assignment[static_cast<std::size_t>(i)]) *
                                         gen.vertex_count() +
                                     h);
        for (long long j = 0; j < q_src; ++j)
            out.assignment[static_cast<std::size_t>(sp.offset + sp.product_vertices + j)] =
                static_cast<int>(dp.offset + dp.product_vertices +
                                 psi->assignment[static_cast<std::size_t>(j)]);
    }
    if (!verify_cohomomorphism(out))
        throw std::logic_error("positive certificate: assembled map failed verification");
    return out;
}

inline void validate_config(const PipelineConfig& cfg) {
    if (cfg.element_cap < 1 || cfg.materialize_cap < 1 || cfg.node_budget < 1 ||
        cfg.confirm_cap < 1)
        throw std::invalid_argument("pipeline config: caps and budgets must be positive");
}

// Shared certificate machinery for encoded preorders and direct families.
inline EmbeddingReport embed_families_core(FinitePreorder preorder,
                                           std::vector<AntichainFamily> families,
                                           const PipelineConfig& cfg) {
    validate_config(cfg);
    const int n = preorder.size();
    if (n > cfg.element_cap)
        throw cap_exceeded("embed: " + std::to_string(n) + " elements exceed the cap of " +
                           std::to_string(cfg.element_cap));

    int depth = 0;
    for (const auto& fam : families) {
        if (fam.words.empty())
            throw std::invalid_argument("embed: families must be non-empty");
        for (const Word& w : fam.words) depth = std::max(depth, static_cast<int>(w.size()));
    }

    EmbeddingReport rep;
    rep.config = cfg;
    rep.preorder = std::move(preorder);
    rep.families = std::move(families);
    rep.table = build_line_table(depth, cfg.interval_s, cfg.interval_t, cfg.seed_a, cfg.seed_b,
                                 cfg.seed_r);

    // The input order must coincide with the family order; anything else is
    // an internal encoding failure.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (static_cast<bool>(rep.preorder.leq[i][j]) !=
                family_leq(rep.families[i], rep.families[j]))
                throw std::logic_error("embed: family order diverges from the input order at (" +
                                       rep.preorder.elements[i] + ", " +
                                       rep.preorder.elements[j] + ")");

    const Graph gen = generator_graph();
    std::vector<Int> sizes;
    for (int i = 0; i < n; ++i)
        sizes.push_back(materialized_size(*build_family_graph(rep.families[i], rep.table), gen));

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Certificate cert;
            cert.src = i;
            cert.dst = j;
            const AntichainFamily& fi = rep.families[static_cast<std::size_t>(i)];
            const AntichainFamily& fj = rep.families[static_cast<std::size_t>(j)];
            if (rep.preorder.leq[i][j]) {
                cert.positive = true;
                PositiveCertificate pos;
                for (const Word& a : fi.words) {
                    SummandMap sm;
                    sm.src_word = a;
                    bool found = false;
                    for (const Word& b : fj.words) // shortlex order: first hit is least
                        if (word_leq(a, b)) {
                            sm.dst_word = b;
                            found = true;
                            break;
                        }
                    if (!found)
                        throw std::logic_error("embed: positive pair lost its covering word");
                    sm.src_line = rep.table.entries.at(a).line;
                    sm.dst_line = rep.table.entries.at(sm.dst_word).line;
                    if (!(sm.src_line.slope <= sm.dst_line.slope &&
                          sm.src_line.intercept <= sm.dst_line.intercept))
                        throw std::logic_error("embed: coefficient inequalities failed for a "
                                               "positive summand");
                    pos.summands.push_back(std::move(sm));
                }
                if (sizes[static_cast<std::size_t>(i)] + sizes[static_cast<std::size_t>(j)] <=
                    cfg.materialize_cap) {
                    Graph src_graph = materialize(*build_family_graph(fi, rep.table), gen,
                                                  cfg.materialize_cap);
                    Graph dst_graph = materialize(*build_family_graph(fj, rep.table), gen,
                                                  cfg.materialize_cap);
                    pos.map = assemble_positive_map(fi, fj, pos.summands, rep.table, cfg,
                                                    src_graph, dst_graph);
                }
                cert.pos = std::move(pos);
            } else {
                cert.positive = false;
                NegativeCertificate neg;
                bool found = false;
                for (const Word& a : fi.words) {
                    bool covered = false;
                    for (const Word& b : fj.words)
                        if (word_leq(a, b)) {
                            covered = true;
                            break;
                        }
                    if (!covered) {
                        neg.witness_word = a;
                        found = true;
                        break;
                    }
                }
                if (!found) throw std::logic_error("embed: negative pair has no witness word");
                const auto& entry = rep.table.entries.at(neg.witness_word);
                neg.witness_value = entry.witness;
                neg.lhs = entry.line.eval(entry.witness);
                bool first = true;
                for (const Word& b : fj.words) {
                    const Rational v = rep.table.entries.at(b).line.eval(entry.witness);
                    if (first || v > neg.rhs) neg.rhs = v;
                    first = false;
                }
                if (!(neg.lhs > neg.rhs))
                    throw std::logic_error("embed: negative witness inequality failed");
                if (cfg.confirm_negative &&
                    sizes[static_cast<std::size_t>(i)] <= cfg.confirm_cap &&
                    sizes[static_cast<std::size_t>(j)] <= cfg.confirm_cap) {
                    Graph src_graph = materialize(*build_family_graph(fi, rep.table), gen,
                                                  cfg.confirm_cap);
                    Graph dst_graph = materialize(*build_family_graph(fj, rep.table), gen,
                                                  cfg.confirm_cap);
                    search_options so;
                    so.node_budget = cfg.node_budget;
                    if (find_cohomomorphism(src_graph, dst_graph, so))
                        throw std::logic_error("embed: search found a map across a negative "
                                               "certificate");
                    neg.search_confirmed = true;
                }
                cert.neg = std::move(neg);
            }
            rep.certificates.push_back(std::move(cert));
        }
    return rep;
}

} // namespace detail

// Main theorem, constructively: encode the preorder into word antichains,
// build a table deep enough for the encoding, and certify every ordered
// pair — explicit cohomomorphism data where the relation holds, an exact
// witness inequality where it does not.
inline EmbeddingReport embed_preorder(const FinitePreorder& p, const PipelineConfig& cfg = {}) {
    detail::validate_config(cfg);
    if (p.size() > cfg.element_cap)
        throw cap_exceeded("embed_preorder: " + std::to_string(p.size()) +
                           " elements exceed the cap of " + std::to_string(cfg.element_cap));
    return detail::embed_families_core(p, encode_finite_preorder(p), cfg);
}

// Direct antichain-family input: the preorder is the one the families
// induce under family containment.
inline EmbeddingReport embed_families(const std::vector<std::string>& names,
                                      const std::vector<AntichainFamily>& families,
                                      const PipelineConfig& cfg = {}) {
    if (names.size() != families.size())
        throw std::invalid_argument("embed_families: names and families must align");
    FinitePreorder p;
    p.elements = names;
    const int n = static_cast<int>(names.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (names[static_cast<std::size_t>(i)] == names[static_cast<std::size_t>(j)])
                throw std::invalid_argument("embed_families: duplicate element name \"" +
                                            names[static_cast<std::size_t>(i)] + "\"");
    p.leq.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            p.leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                family_leq(families[static_cast<std::size_t>(i)],
                           families[static_cast<std::size_t>(j)]);
    return detail::embed_families_core(std::move(p), families, cfg);
}

// ---------------------------------------------------------------------------
// Report serialization.  All rationals are "num/den" strings; key order is
// fixed, so identical inputs dump to identical bytes.

inline nlohmann::ordered_json report_to_json(const EmbeddingReport& rep) {
    nlohmann::ordered_json j;
    j["format"] = "cohomord-report-v1";
    {
        nlohmann::ordered_json c;
        c["interval"] = {to_string(rep.config.interval_s), to_string(rep.config.interval_t)};
        c["seed_a"] = to_string(rep.config.seed_a);
        c["seed_b"] = to_string(rep.config.seed_b);
        c["seed_r"] = to_string(rep.config.seed_r);
        c["element_cap"] = rep.config.element_cap;
        c["materialize_cap"] = rep.config.materialize_cap;
        c["node_budget"] = rep.config.node_budget;
        c["confirm_negative"] = rep.config.confirm_negative;
        c["confirm_cap"] = rep.config.confirm_cap;
        j["config"] = std::move(c);
    }
    j["generator"] = to_string(*generator_expression());
    j["preorder"] = preorder_to_json(rep.preorder);
    {
        auto fams = nlohmann::ordered_json::object();
        for (int i = 0; i < rep.preorder.size(); ++i)
            fams[rep.preorder.elements[static_cast<std::size_t>(i)]] =
                rep.families[static_cast<std::size_t>(i)].words;
        j["families"] = std::move(fams);
    }
    j["line_table"] = table_to_json(rep.table);
    {
        auto wg = nlohmann::ordered_json::object();
        for (const auto& [w, e] : rep.table.entries) {
            bool used = false;
            for (const auto& fam : rep.families)
                for (const Word& fw : fam.words)
                    if (fw == w) used = true;
            if (used) wg[w] = to_string(*build_word_graph(w, rep.table));
        }
        j["word_graphs"] = std::move(wg);
    }
    {
        auto certs = nlohmann::ordered_json::array();
        for (const auto& cert : rep.certificates) {
            nlohmann::ordered_json c;
            c["src"] = rep.preorder.elements[static_cast<std::size_t>(cert.src)];
            c["dst"] = rep.preorder.elements[static_cast<std::size_t>(cert.dst)];
            c["kind"] = cert.positive ? "positive" : "negative";
            if (cert.positive) {
                auto summands = nlohmann::ordered_json::array();
                for (const auto& sm : cert.pos->summands) {
                    nlohmann::ordered_json s;
                    s["src_word"] = sm.src_word;
                    s["dst_word"] = sm.dst_word;
                    s["src_line"] = {{"a", to_string(sm.src_line.slope)},
                                     {"b", to_string(sm.src_line.intercept)}};
                    s["dst_line"] = {{"a", to_string(sm.dst_line.slope)},
                                     {"b", to_string(sm.dst_line.intercept)}};
                    summands.push_back(std::move(s));
                }
                c["summands"] = std::move(summands);
                if (cert.pos->map) c["map"] = map_to_json(*cert.pos->map);
            } else {
                c["witness_word"] = cert.neg->witness_word;
                c["witness_value"] = to_string(cert.neg->witness_value);
                c["lhs"] = to_string(cert.neg->lhs);
                c["rhs"] = to_string(cert.neg->rhs);
                if (cert.neg->search_confirmed) c["search_confirmed"] = *cert.neg->search_confirmed;
            }
            certs.push_back(std::move(c));
        }
        j["certificates"] = std::move(certs);
    }
    return j;
}

inline EmbeddingReport report_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != std::string("cohomord-report-v1"))
        throw std::invalid_argument("report json: missing or unknown format tag");
    EmbeddingReport rep;
    const auto& c = j.at("config");
    const auto& iv = c.at("interval");
    rep.config.interval_s = parse_rational(iv.at(0).get<std::string>());
    rep.config.interval_t = parse_rational(iv.at(1).get<std::string>());
    rep.config.seed_a = parse_rational(c.at("seed_a").get<std::string>());
    rep.config.seed_b = parse_rational(c.at("seed_b").get<std::string>());
    rep.config.seed_r = parse_rational(c.at("seed_r").get<std::string>());
    rep.config.element_cap = c.at("element_cap").get<int>();
    rep.config.materialize_cap = c.at("materialize_cap").get<int>();
    rep.config.node_budget = c.at("node_budget").get<long long>();
    rep.config.confirm_negative = c.at("confirm_negative").get<bool>();
    rep.config.confirm_cap = c.at("confirm_cap").get<int>();

    rep.preorder = preorder_from_json(j.at("preorder"));
    const auto& fams = j.at("families");
    for (const auto& name : rep.preorder.elements) {
        if (!fams.contains(name))
            throw std::invalid_argument("report json: missing family for element \"" + name +
                                        "\"");
        rep.families.push_back(
            make_antichain_family(fams.at(name).get<std::vector<Word>>()));
    }
    rep.table = table_from_json(j.at("line_table"));

    for (const auto& cj : j.at("certificates")) {
        Certificate cert;
        cert.src = rep.preorder.index_of(cj.at("src").get<std::string>());
        cert.dst = rep.preorder.index_of(cj.at("dst").get<std::string>());
        const std::string kind = cj.at("kind").get<std::string>();
        if (kind == "positive") {
            cert.positive = true;
            PositiveCertificate pos;
            for (const auto& sj : cj.at("summands")) {
                SummandMap sm;
                sm.src_word = sj.at("src_word").get<std::string>();
                sm.dst_word = sj.at("dst_word").get<std::string>();
                validate_word(sm.src_word);
                validate_word(sm.dst_word);
                sm.src_line.slope = parse_rational(sj.at("src_line").at("a").get<std::string>());
                sm.src_line.intercept =
                    parse_rational(sj.at("src_line").at("b").get<std::string>());
                sm.dst_line.slope = parse_rational(sj.at("dst_line").at("a").get<std::string>());
                sm.dst_line.intercept =
                    parse_rational(sj.at("dst_line").at("b").get<std::string>());
                pos.summands.push_back(std::move(sm));
            }
            if (cj.contains("map")) pos.map = map_from_json(cj.at("map"));
            cert.pos = std::move(pos);
        } else if (kind == "negative") {
            cert.positive = false;
            NegativeCertificate neg;
            neg.witness_word = cj.at("witness_word").get<std::string>();
            validate_word(neg.witness_word);
            neg.witness_value = parse_rational(cj.at("witness_value").get<std::string>());
            neg.lhs = parse_rational(cj.at("lhs").get<std::string>());
            neg.rhs = parse_rational(cj.at("rhs").get<std::string>());
            if (cj.contains("search_confirmed"))
                neg.search_confirmed = cj.at("search_confirmed").get<bool>();
            cert.neg = std::move(neg);
        } else {
            throw std::invalid_argument("report json: unknown certificate kind \"" + kind + "\"");
        }
        rep.certificates.push_back(std::move(cert));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Independent re-verification of a report, from its serialized content
// alone.  Returns a list of human-readable failures; empty means clean.

struct VerifyResult {
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

inline VerifyResult verify_report(const EmbeddingReport& rep) {
    VerifyResult res;
    auto fail = [&](const std::string& msg) { res.failures.push_back(msg); };

    auto table_report = verify_line_table(rep.table);
    for (const auto& v : table_report.violations)
        fail("line table: " + v.kind + " violation at (\"" + v.v + "\", \"" + v.w + "\")");
    if (rep.table.s != rep.config.interval_s || rep.table.t != rep.config.interval_t)
        fail("line table: interval differs from the configured interval");

    const int n = rep.preorder.size();
    if (static_cast<int>(rep.families.size()) != n) {
        fail("families: count does not match the element count");
        return res;
    }
    for (int i = 0; i < n; ++i) {
        try {
            make_antichain_family(rep.families[static_cast<std::size_t>(i)].words);
        } catch (const std::invalid_argument& e) {
            fail("families: " + rep.preorder.elements[static_cast<std::size_t>(i)] + ": " +
                 e.what());
        }
        if (rep.families[static_cast<std::size_t>(i)].words.empty())
            fail("families: " + rep.preorder.elements[static_cast<std::size_t>(i)] +
                 " is empty");
        for (const Word& w : rep.families[static_cast<std::size_t>(i)].words)
            if (!rep.table.entries.contains(w))
                fail("families: word \"" + w + "\" missing from the line table");
    }
    if (!res.failures.empty()) return res;

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (static_cast<bool>(rep.preorder.leq[i][j]) !=
                family_leq(rep.families[static_cast<std::size_t>(i)],
                           rep.families[static_cast<std::size_t>(j)]))
                fail("order: family containment disagrees with the preorder at (" +
                     rep.preorder.elements[static_cast<std::size_t>(i)] + ", " +
                     rep.preorder.elements[static_cast<std::size_t>(j)] + ")");

    // exactly one certificate per ordered pair, in (src, dst) order
    std::vector<std::pair<int, int>> expected;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) expected.emplace_back(i, j);
    if (rep.certificates.size() != expected.size()) {
        fail("certificates: expected " + std::to_string(expected.size()) + " entries, found " +
             std::to_string(rep.certificates.size()));
        return res;
    }

    const Graph gen = generator_graph();
    for (std::size_t k = 0; k < expected.size(); ++k) {
        const auto& cert = rep.certificates[k];
        const int i = cert.src, j = cert.dst;
        const std::string pair_name = "(" +
                                      rep.preorder.elements[static_cast<std::size_t>(i)] + " -> " +
                                      rep.preorder.elements[static_cast<std::size_t>(j)] + ")";
        if (std::pair<int, int>(i, j) != expected[k]) {
            fail("certificates: entry " + std::to_string(k) + " out of order " + pair_name);
            continue;
        }
        if (cert.positive != static_cast<bool>(rep.preorder.leq[i][j])) {
            fail(pair_name + ": certificate polarity contradicts the relation");
            continue;
        }
        const AntichainFamily& fi = rep.families[static_cast<std::size_t>(i)];
        const AntichainFamily& fj = rep.families[static_cast<std::size_t>(j)];
        if (cert.positive) {
            if (!cert.pos) {
                fail(pair_name + ": positive certificate missing its body");
                continue;
            }
            if (cert.pos->summands.size() != fi.words.size()) {
                fail(pair_name + ": expected one summand per source word");
                continue;
            }
            for (std::size_t s = 0; s < fi.words.size(); ++s) {
                const auto& sm = cert.pos->summands[s];
                if (sm.src_word != fi.words[s]) {
                    fail(pair_name + ": summand " + std::to_string(s) +
                         " does not follow the family order");
                    continue;
                }
                bool in_dst = false;
                for (const Word& b : fj.words) in_dst |= (b == sm.dst_word);
                if (!in_dst) {
                    fail(pair_name + ": summand target \"" + sm.dst_word +
                         "\" is not in the target family");
                    continue;
                }
                if (!word_leq(sm.src_word, sm.dst_word))
                    fail(pair_name + ": summand words are not prefix-ordered");
                const auto& se = rep.table.entries.at(sm.src_word);
                const auto& de = rep.table.entries.at(sm.dst_word);
                if (sm.src_line != se.line || sm.dst_line != de.line)
                    fail(pair_name + ": summand lines do not match the table");
                if (!(sm.src_line.slope <= sm.dst_line.slope &&
                      sm.src_line.intercept <= sm.dst_line.intercept))
                    fail(pair_name + ": summand coefficient inequalities fail");
            }
            const Int total = materialized_size(*build_family_graph(fi, rep.table), gen) +
                              materialized_size(*build_family_graph(fj, rep.table), gen);
            if (total <= rep.config.materialize_cap) {
                if (!cert.pos->map) {
                    fail(pair_name + ": explicit map required at this size but absent");
                } else {
                    Graph src_graph = materialize(*build_family_graph(fi, rep.table), gen,
                                                  rep.config.materialize_cap);
                    Graph dst_graph = materialize(*build_family_graph(fj, rep.table), gen,
                                                  rep.config.materialize_cap);
                    if (cert.pos->map->source != src_graph || cert.pos->map->target != dst_graph)
                        fail(pair_name + ": map endpoints differ from the materializations");
                    else if (!verify_cohomomorphism(*cert.pos->map))
                        fail(pair_name + ": explicit map fails verification");
                }
            }
        } else {
            if (!cert.neg) {
                fail(pair_name + ": negative certificate missing its body");
                continue;
            }
            const auto& neg = *cert.neg;
            bool in_src = false;
            for (const Word& a : fi.words) in_src |= (a == neg.witness_word);
            if (!in_src) {
                fail(pair_name + ": witness word is not in the source family");
                continue;
            }
            for (const Word& b : fj.words)
                if (word_leq(neg.witness_word, b))
                    fail(pair_name + ": witness word is covered by \"" + b + "\"");
            auto it = rep.table.entries.find(neg.witness_word);
            if (it == rep.table.entries.end()) {
                fail(pair_name + ": witness word missing from the table");
                continue;
            }
            if (neg.witness_value != it->second.witness)
                fail(pair_name + ": witness value differs from the table");
            if (neg.lhs != it->second.line.eval(it->second.witness))
                fail(pair_name + ": lhs is not the witness line value");
            bool first = true;
            Rational rhs;
            for (const Word& b : fj.words) {
                const Rational v = rep.table.entries.at(b).line.eval(it->second.witness);
                if (first || v > rhs) rhs = v;
                first = false;
            }
            if (neg.rhs != rhs) fail(pair_name + ": rhs is not the target maximum");
            if (!(neg.lhs > neg.rhs)) fail(pair_name + ": witness inequality is not strict");
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Demo constructions.

struct WitnessEvaluation {
    int src = 0;
    int dst = 0;
    Rational point;
    Rational lhs; // value of the src expression at the point
    Rational rhs; // value of the dst expression at the point; lhs > rhs
};

struct CounterexampleReport {
    std::vector<ExprPtr> exprs;                    // H_1, H_2, H_3
    Rational intersection;                          // common crossing of the lines
    std::vector<WitnessEvaluation> incomparabilities; // all six ordered pairs
    bool dominance = false; // envelope(H_1+H_2) <= envelope(H_1+H_3) on the interval
};

// The three-expression remark: H_1, H_2, H_3 are pairwise incomparable in
// the model, yet H_1 + H_2 is dominated by H_1 + H_3 across the interval.
// The dominance verdict is a model-level certificate (an exact envelope
// comparison), not a cohomomorphism.
inline CounterexampleReport demo_counterexample() {
    CounterexampleReport rep;
    rep.exprs = {parse_expr("F(6) * g | F(7)"), parse_expr("F(3) * g | F(14)"),
                 parse_expr("F(21)")};
    rep.intersection = Rational(7, 3);
    auto lines = counterexample_lines();
    for (std::size_t a = 0; a < lines.size(); ++a)
        for (std::size_t b = 0; b < lines.size(); ++b) {
            if (a == b) continue;
            // the steeper line wins right of the crossing, the flatter one left
            const Rational point =
                lines[a].slope > lines[b].slope ? Rational(12, 5) : Rational(9, 4);
            WitnessEvaluation ev;
            ev.src = static_cast<int>(a);
            ev.dst = static_cast<int>(b);
            ev.point = point;
            ev.lhs = eval_spectral(*rep.exprs[a], point);
            ev.rhs = eval_spectral(*rep.exprs[b], point);
            if (!(ev.lhs > ev.rhs))
                throw std::logic_error("demo_counterexample: witness evaluation failed");
            if (ev.lhs != lines[a].eval(point) || ev.rhs != lines[b].eval(point))
                throw std::logic_error("demo_counterexample: expressions diverge from lines");
            rep.incomparabilities.push_back(std::move(ev));
        }
    const Rational s(9, 4), t(5, 2);
    auto low = to_max_poly(*join_expr(rep.exprs[0], rep.exprs[1]));
    auto high = to_max_poly(*join_expr(rep.exprs[0], rep.exprs[2]));
    rep.dominance = !envelope_leq(low, high, s, t).has_value();
    if (!rep.dominance) throw std::logic_error("demo_counterexample: dominance failed");
    return rep;
}

struct AntichainReport {
    std::vector<Line> lines;
    std::vector<ExprPtr> exprs;
    Rational common_point;  // 7/3
    Rational common_value;  // 23/3
    std::vector<WitnessEvaluation> incomparabilities;
};

// n expressions whose lines all pass through (7/3, 23/3): any two cross
// there, so each beats the other on one side — an antichain of size n.
inline AntichainReport demo_antichain(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("demo_antichain: n must be in 1..64");
    AntichainReport rep;
    rep.lines = antichain_lines(n, 7, 3);
    rep.common_point = Rational(7, 3);
    rep.common_value = Rational(23, 3);
    for (const Line& l : rep.lines) {
        if (l.eval(rep.common_point) != rep.common_value)
            throw std::logic_error("demo_antichain: line misses the common point");
        rep.exprs.push_back(disjoint_union_expr(
            strong_product_expr(fraction_atom(numerator(l.slope), denominator(l.slope)),
                                generator_atom()),
            fraction_atom(numerator(l.intercept), denominator(l.intercept))));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const Rational point = rep.lines[static_cast<std::size_t>(a)].slope >
                                           rep.lines[static_cast<std::size_t>(b)].slope
                                       ? Rational(12, 5)
                                       : Rational(9, 4);
            WitnessEvaluation ev;
            ev.src = a;
            ev.dst = b;
            ev.point = point;
            ev.lhs = eval_spectral(*rep.exprs[static_cast<std::size_t>(a)], point);
            ev.rhs = eval_spectral(*rep.exprs[static_cast<std::size_t>(b)], point);
            if (!(ev.lhs > ev.rhs))
                throw std::logic_error("demo_antichain: witness evaluation failed");
            rep.incomparabilities.push_back(std::move(ev));
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Derivations of the complement-of-projective-rank value on dyadic fraction
// graphs, and the dyadic approach to arbitrary fractions.

struct DerivationNode {
    long long p = 0;
    long long q = 0;
    enum class Rule { base, halve, odd_split } rule = Rule::base;
    Rational value;
    std::vector<DerivationNode> children;
};

namespace detail {

inline bool is_power_of_two(long long p) { return p >= 1 && (p & (p - 1)) == 0; }

inline DerivationNode xif_node(long long p, long long q) {
    DerivationNode node;
    node.p = p;
    node.q = q;
    node.value = Rational(p, q);
    if (q == 1) {
        node.rule = DerivationNode::Rule::base;
        return node;
    }
    if (q % 2 == 0) {
        node.rule = DerivationNode::Rule::halve;
        node.children.push_back(xif_node(p / 2, q / 2));
        return node;
    }
    node.rule = DerivationNode::Rule::odd_split;
    if (!(q >= 2 && q <= p / 2 - 1))
        throw std::logic_error("xif_derivation: odd split side condition failed");
    node.children.push_back(xif_node(p, q - 1));
    node.children.push_back(xif_node(p, q + 1));
    return node;
}

} // namespace detail

inline DerivationNode xif_derivation(long long p, long long q) {
    if (!detail::is_power_of_two(p) || p < 2)
        throw std::invalid_argument("xif_derivation: p must be a power of two, at least 2");
    if (q < 1 || q > p / 2)
        throw std::invalid_argument("xif_derivation: q must satisfy 1 <= q <= p/2");
    return detail::xif_node(p, q);
}

// Structural re-validation of a derivation tree, independent of the builder.
inline bool validate_derivation(const DerivationNode& node) {
    if (node.value != Rational(node.p, node.q)) return false;
    switch (node.rule) {
        case DerivationNode::Rule::base:
            return node.q == 1 && node.children.empty();
        case DerivationNode::Rule::halve:
            return node.q % 2 == 0 && node.children.size() == 1 &&
                   node.children[0].p == node.p / 2 && node.children[0].q == node.q / 2 &&
                   validate_derivation(node.children[0]);
        case DerivationNode::Rule::odd_split:
            return node.q % 2 == 1 && node.q >= 2 && node.q <= node.p / 2 - 1 &&
                   node.children.size() == 2 && node.children[0].p == node.p &&
                   node.children[0].q == node.q - 1 && node.children[1].p == node.p &&
                   node.children[1].q == node.q + 1 && validate_derivation(node.children[0]) &&
                   validate_derivation(node.children[1]);
    }
    return false;
}

inline nlohmann::ordered_json derivation_to_json(const DerivationNode& node) {
    nlohmann::ordered_json j;
    j["p"] = node.p;
    j["q"] = node.q;
    j["rule"] = node.rule == DerivationNode::Rule::base    ? "base"
                : node.rule == DerivationNode::Rule::halve ? "halve"
                                                           : "odd-split";
    j["value"] = to_string(node.value);
    if (!node.children.empty()) {
        auto kids = nlohmann::ordered_json::array();
        for (const auto& c : node.children) kids.push_back(derivation_to_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

struct DyadicApproach {
    int n = 0;
    long long q = 0; // 2^n / q lands in [p/q_in - eps, p/q_in]
};

// Smallest n admitting a denominator q' <= 2^(n-1) with
// p/q - eps <= 2^n/q' <= p/q; q' is the least such (the closest approach
// from below at that n).
inline DyadicApproach dyadic_approach(long long p, long long q, const Rational& eps) {
    if (q < 1 || p < 2 * q) throw std::invalid_argument("dyadic_approach: requires p/q >= 2");
    if (!(eps > 0)) throw std::invalid_argument("dyadic_approach: eps must be positive");
    const Rational target(p, q);
    for (int n = 1; n <= 62; ++n) {
        const Int power = Int(1) << n;
        const Int qprime = ceil_div(power * q, Int(p));
        if (qprime > (Int(1) << (n - 1))) continue;
        const Rational approx(power, qprime);
        if (approx >= target - eps) {
            if (approx > target) throw std::logic_error("dyadic_approach: overshot the target");
            return {n, qprime.convert_to<long long>()};
        }
    }
    throw std::logic_error("dyadic_approach: no dyadic approximation found within 62 doublings");
}

} // namespace cohomord
