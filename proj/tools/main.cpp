#include "cohomord/clique_cover.hpp"
#include "cohomord/graph_io.hpp"
#include "cohomord/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cohomord;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write \"" + path + "\"");
    out << content;
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

void emit_json(const nlohmann::ordered_json& j, const std::string& out_path) {
    emit_text(j.dump(2) + "\n", out_path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A graph argument is either an expression over F(p/q) and g, or
// @file.g6 / @file.json to load a stored graph.
Graph load_graph_argument(const std::string& arg, int cap) {
    if (!arg.empty() && arg[0] == '@') {
        const std::string path = arg.substr(1);
        std::string content = read_file(path);
        if (ends_with(path, ".g6")) {
            const auto end = content.find_first_of("\r\n");
            return decode_graph6(end == std::string::npos ? content : content.substr(0, end));
        }
        if (ends_with(path, ".json")) return graph_from_json(nlohmann::json::parse(content));
        throw std::invalid_argument("graph file must end in .g6 or .json: \"" + path + "\"");
    }
    return materialize(*parse_expr(arg), generator_graph(), cap);
}

std::string describe_witness(const WitnessEvaluation& ev) {
    std::ostringstream ss;
    ss << "H_" << ev.src + 1 << " vs H_" << ev.dst + 1 << " at x = " << to_string(ev.point)
       << ": " << to_string(ev.lhs) << " > " << to_string(ev.rhs);
    return ss.str();
}

nlohmann::ordered_json witness_to_json(const WitnessEvaluation& ev) {
    nlohmann::ordered_json j;
    j["src"] = ev.src;
    j["dst"] = ev.dst;
    j["point"] = to_string(ev.point);
    j["lhs"] = to_string(ev.lhs);
    j["rhs"] = to_string(ev.rhs);
    return j;
}

void print_derivation(const DerivationNode& node, int indent, std::ostream& os) {
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << node.p << "/" << node.q
       << " = " << to_string(node.value) << "  ["
       << (node.rule == DerivationNode::Rule::base      ? "base"
           : node.rule == DerivationNode::Rule::halve   ? "halve"
                                                        : "odd-split")
       << "]\n";
    for (const auto& c : node.children) print_derivation(c, indent + 1, os);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified embeddings into the graph cohomomorphism order"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- construct ------------------------------------------------------
    auto* construct = app.add_subcommand(
        "construct", "embed a finite preorder (or antichain families) and emit a report");
    std::string construct_input, construct_out;
    std::vector<std::string> construct_interval, construct_seeds;
    int construct_depth = -1;
    int construct_cap = PipelineConfig{}.materialize_cap;
    long long construct_budget = PipelineConfig{}.node_budget;
    bool construct_confirm = false;
    construct->add_option("input", construct_input, "preorder or families JSON file")->required();
    construct->add_option("--interval", construct_interval, "interval endpoints s t (rationals)")
        ->expected(2);
    construct->add_option("--seeds", construct_seeds, "root seeds a b r (rationals)")->expected(3);
    construct->add_option("--depth", construct_depth, "largest table depth to accept");
    construct->add_option("--cap", construct_cap, "materialization vertex cap");
    construct->add_option("--budget", construct_budget, "search node budget");
    construct->add_flag("--confirm-negative", construct_confirm,
                        "search-confirm negative pairs on tiny instances");
    construct->add_option("--out", construct_out, "write the report here instead of stdout");
    construct->callback([&] {
        PipelineConfig cfg;
        if (!construct_interval.empty()) {
            cfg.interval_s = parse_rational(construct_interval[0]);
            cfg.interval_t = parse_rational(construct_interval[1]);
        }
        if (!construct_seeds.empty()) {
            cfg.seed_a = parse_rational(construct_seeds[0]);
            cfg.seed_b = parse_rational(construct_seeds[1]);
            cfg.seed_r = parse_rational(construct_seeds[2]);
        }
        cfg.materialize_cap = construct_cap;
        cfg.node_budget = construct_budget;
        cfg.confirm_negative = construct_confirm;

        const auto doc = nlohmann::ordered_json::parse(read_file(construct_input));
        EmbeddingReport rep;
        if (doc.is_object() && doc.contains("families") && !doc.contains("format")) {
            std::vector<std::string> names;
            std::vector<AntichainFamily> families;
            int depth = 0;
            for (const auto& [name, words] : doc.at("families").items()) {
                names.push_back(name);
                families.push_back(make_antichain_family(words.get<std::vector<Word>>()));
                for (const Word& w : families.back().words)
                    depth = std::max(depth, static_cast<int>(w.size()));
            }
            if (construct_depth >= 0 && depth > construct_depth)
                throw std::invalid_argument("required table depth " + std::to_string(depth) +
                                            " exceeds --depth " +
                                            std::to_string(construct_depth));
            rep = embed_families(names, families, cfg);
        } else {
            const auto p = preorder_from_json(doc);
            const int depth = p.size() > 0 ? encoding_width(p.size()) : 0;
            if (construct_depth >= 0 && depth > construct_depth)
                throw std::invalid_argument("required table depth " + std::to_string(depth) +
                                            " exceeds --depth " +
                                            std::to_string(construct_depth));
            rep = embed_preorder(p, cfg);
        }
        int positives = 0;
        for (const auto& c : rep.certificates) positives += c.positive ? 1 : 0;
        emit_json(report_to_json(rep), construct_out);
        std::cerr << rep.certificates.size() << " certificates: " << positives << " positive, "
                  << rep.certificates.size() - static_cast<std::size_t>(positives)
                  << " negative\n";
    });

    // ---- verify ---------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "re-check every certificate in a report");
    std::string verify_input;
    verify->add_option("report", verify_input, "report JSON file")->required();
    verify->callback([&] {
        const auto rep = report_from_json(nlohmann::json::parse(read_file(verify_input)));
        const auto res = verify_report(rep);
        if (res.ok()) {
            std::cout << "report verifies: " << rep.certificates.size() << " certificates\n";
        } else {
            for (const auto& f : res.failures) std::cout << "FAIL " << f << "\n";
            rc = 1;
        }
    });

    // ---- graph utilities --------------------------------------------------
    auto* graph = app.add_subcommand("graph", "materialized-graph utilities");
    graph->require_subcommand(1);

    auto* product = graph->add_subcommand("product", "strong product of two graphs, as graph6");
    std::string product_a, product_b;
    int product_cap = 5000;
    product->add_option("left", product_a, "expression or @file")->required();
    product->add_option("right", product_b, "expression or @file")->required();
    product->add_option("--cap", product_cap, "materialization vertex cap");
    product->callback([&] {
        const Graph g = strong_product(load_graph_argument(product_a, product_cap),
                                       load_graph_argument(product_b, product_cap));
        std::cout << encode_graph6(g) << "\n";
    });

    auto* alpha = graph->add_subcommand("alpha", "independence number, exactly");
    std::string alpha_arg;
    int alpha_cap = 5000;
    long long alpha_budget = alpha_options{}.node_budget;
    alpha->add_option("graph", alpha_arg, "expression or @file")->required();
    alpha->add_option("--cap", alpha_cap, "materialization vertex cap");
    alpha->add_option("--budget", alpha_budget, "search node budget");
    alpha->callback([&] {
        alpha_options ao;
        ao.node_budget = alpha_budget;
        std::cout << independence_number(load_graph_argument(alpha_arg, alpha_cap), ao) << "\n";
    });

    auto* cover = graph->add_subcommand("cliquecover",
                                        "fractional clique cover number, exactly");
    std::string cover_arg;
    int cover_cap = 5000;
    cover->add_option("graph", cover_arg, "expression or @file")->required();
    cover->add_option("--cap", cover_cap, "materialization vertex cap");
    cover->callback([&] {
        const auto c = fractional_clique_cover_number(load_graph_argument(cover_arg, cover_cap));
        std::cout << to_string(c.value) << "\n";
    });

    auto* cohom = graph->add_subcommand("cohom", "search for an explicit cohomomorphism");
    std::string cohom_src, cohom_dst, cohom_out;
    int cohom_cap = 5000;
    long long cohom_budget = search_options{}.node_budget;
    cohom->add_option("source", cohom_src, "expression or @file")->required();
    cohom->add_option("target", cohom_dst, "expression or @file")->required();
    cohom->add_option("--cap", cohom_cap, "materialization vertex cap");
    cohom->add_option("--budget", cohom_budget, "search node budget");
    cohom->add_option("--out", cohom_out, "write the map JSON here instead of stdout");
    cohom->callback([&] {
        search_options so;
        so.node_budget = cohom_budget;
        const auto m = find_cohomomorphism(load_graph_argument(cohom_src, cohom_cap),
                                           load_graph_argument(cohom_dst, cohom_cap), so);
        if (m)
            emit_json(map_to_json(*m), cohom_out);
        else
            std::cout << "none\n";
    });

    auto* exportg = graph->add_subcommand("export", "write a materialized graph");
    std::string export_arg, export_format = "g6", export_out;
    int export_cap = 5000;
    exportg->add_option("graph", export_arg, "expression or @file")->required();
    exportg->add_option("--format", export_format, "g6 or json")
        ->check(CLI::IsMember({"g6", "json"}));
    exportg->add_option("--cap", export_cap, "materialization vertex cap");
    exportg->add_option("--out", export_out, "output file (stdout when absent)");
    exportg->callback([&] {
        const Graph g = load_graph_argument(export_arg, export_cap);
        if (export_format == "g6")
            emit_text(encode_graph6(g) + "\n", export_out);
        else
            emit_json(graph_to_json(g), export_out);
    });

    // ---- demos ----------------------------------------------------------
    auto* demo = app.add_subcommand("demo", "worked constructions with exact values");
    demo->require_subcommand(1);

    auto* counterex = demo->add_subcommand(
        "counterexample", "three pairwise-incomparable expressions whose unions compare");
    std::string counterex_out;
    counterex->add_option("--out", counterex_out, "write the JSON report here");
    counterex->callback([&] {
        const auto rep = demo_counterexample();
        std::cout << "expressions:\n";
        for (std::size_t i = 0; i < rep.exprs.size(); ++i)
            std::cout << "  H_" << i + 1 << " = " << to_string(*rep.exprs[i]) << "\n";
        std::cout << "all three lines meet at x = " << to_string(rep.intersection)
                  << " (value 21)\n";
        std::cout << "pairwise incomparability witnesses:\n";
        for (const auto& ev : rep.incomparabilities)
            std::cout << "  " << describe_witness(ev) << "\n";
        std::cout << "model-level certificate: H_1 + H_2 <= H_1 + H_3 across [9/4, 5/2] "
                     "(exact envelope comparison; not a cohomomorphism certificate)\n";
        if (!counterex_out.empty()) {
            nlohmann::ordered_json j;
            auto exprs = nlohmann::ordered_json::array();
            for (const auto& e : rep.exprs) exprs.push_back(to_string(*e));
            j["exprs"] = std::move(exprs);
            j["intersection"] = to_string(rep.intersection);
            auto ws = nlohmann::ordered_json::array();
            for (const auto& ev : rep.incomparabilities) ws.push_back(witness_to_json(ev));
            j["witnesses"] = std::move(ws);
            j["dominance"] = rep.dominance;
            j["certificate_level"] = "model";
            emit_json(j, counterex_out);
        }
    });

    auto* anti = demo->add_subcommand("antichain", "n expressions crossing at one point");
    int anti_n = 3;
    std::string anti_out;
    anti->add_option("n", anti_n, "antichain size")->required();
    anti->add_option("--out", anti_out, "write the JSON report here");
    anti->callback([&] {
        const auto rep = demo_antichain(anti_n);
        std::cout << "lines through (" << to_string(rep.common_point) << ", "
                  << to_string(rep.common_value) << "):\n";
        for (std::size_t i = 0; i < rep.lines.size(); ++i)
            std::cout << "  H_" << i + 1 << " = " << to_string(*rep.exprs[i]) << "   (slope "
                      << to_string(rep.lines[i].slope) << ", intercept "
                      << to_string(rep.lines[i].intercept) << ")\n";
        std::cout << rep.incomparabilities.size()
                  << " strict witness inequalities certify pairwise incomparability\n";
        if (!anti_out.empty()) {
            nlohmann::ordered_json j;
            auto exprs = nlohmann::ordered_json::array();
            for (const auto& e : rep.exprs) exprs.push_back(to_string(*e));
            j["exprs"] = std::move(exprs);
            j["common_point"] = to_string(rep.common_point);
            j["common_value"] = to_string(rep.common_value);
            auto ws = nlohmann::ordered_json::array();
            for (const auto& ev : rep.incomparabilities) ws.push_back(witness_to_json(ev));
            j["witnesses"] = std::move(ws);
            emit_json(j, anti_out);
        }
    });

    auto* xif = demo->add_subcommand("xif", "derivation tree for a dyadic fraction value");
    long long xif_p = 0, xif_q = 0;
    std::string xif_out;
    xif->add_option("p", xif_p, "numerator (a power of two)")->required();
    xif->add_option("q", xif_q, "denominator (1 <= q <= p/2)")->required();
    xif->add_option("--out", xif_out, "write the JSON tree here");
    xif->callback([&] {
        const auto tree = xif_derivation(xif_p, xif_q);
        if (!validate_derivation(tree))
            throw std::logic_error("derivation failed structural validation");
        print_derivation(tree, 0, std::cout);
        if (!xif_out.empty()) emit_json(derivation_to_json(tree), xif_out);
    });

    auto* dyadic = demo->add_subcommand("dyadic", "least doubling reaching a fraction from below");
    long long dy_p = 0, dy_q = 0;
    std::string dy_eps, dy_out;
    dyadic->add_option("p", dy_p, "numerator")->required();
    dyadic->add_option("q", dy_q, "denominator (p/q >= 2)")->required();
    dyadic->add_option("eps", dy_eps, "tolerance below p/q (rational)")->required();
    dyadic->add_option("--out", dy_out, "write the JSON result here");
    dyadic->callback([&] {
        const Rational eps = parse_rational(dy_eps);
        const auto res = dyadic_approach(dy_p, dy_q, eps);
        const Rational approx(Int(1) << res.n, Int(res.q));
        std::cout << "(" << res.n << ", " << res.q << ")\n";
        std::cout << "2^" << res.n << "/" << res.q << " = " << to_string(approx) << " lies in ["
                  << to_string(Rational(dy_p, dy_q) - eps) << ", "
                  << to_string(Rational(dy_p, dy_q)) << "]\n";
        if (!dy_out.empty()) {
            nlohmann::ordered_json j;
            j["n"] = res.n;
            j["q"] = res.q;
            j["value"] = to_string(approx);
            emit_json(j, dy_out);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const budget_exhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
