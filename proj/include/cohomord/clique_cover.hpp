#pragma once

#include "cohomord/errors.hpp"
#include "cohomord/graph.hpp"
#include "cohomord/rational.hpp"
#include "cohomord/simplex.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace cohomord {

struct clique_options {
    long long max_cliques = 1'000'000;
};

namespace detail {

inline int popcount_and_words(const std::uint64_t* a, const std::uint64_t* b, int words) {
    int c = 0;
    for (int i = 0; i < words; ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

struct clique_enum {
    const Graph& g;
    int words;
    long long budget;
    std::vector<std::vector<int>> out;
    std::vector<int> r;

    static bool test_bit(const std::vector<std::uint64_t>& s, int v) {
        return (s[v >> 6] >> (v & 63)) & 1u;
    }
    static bool empty(const std::vector<std::uint64_t>& s) {
        for (auto w : s)
            if (w) return false;
        return true;
    }

    // Bron–Kerbosch with a Tomita pivot (the vertex of P ∪ X covering the
    // most of P; ties to the lowest index).
    void run(std::vector<std::uint64_t> p, std::vector<std::uint64_t> x) {
        if (empty(p) && empty(x)) {
            if (static_cast<long long>(out.size()) >= budget)
                throw budget_exhausted("maximal_cliques: clique count budget exhausted");
            std::vector<int> clique = r;
            std::sort(clique.begin(), clique.end());
            out.push_back(std::move(clique));
            return;
        }
        int pivot = -1, best = -1;
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = p[w] | x[w];
            while (bits) {
                const int u = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const int c = popcount_and_words(g.row(u), p.data(), words);
                if (c > best) {
                    best = c;
                    pivot = u;
                }
            }
        }
        std::vector<std::uint64_t> cand(words);
        for (int w = 0; w < words; ++w) cand[w] = p[w] & ~g.row(pivot)[w];
        std::vector<std::uint64_t> np(words), nx(words);
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                const int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                for (int i = 0; i < words; ++i) {
                    np[i] = p[i] & g.row(v)[i];
                    nx[i] = x[i] & g.row(v)[i];
                }
                r.push_back(v);
                run(np, nx);
                r.pop_back();
                p[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
                x[v >> 6] |= std::uint64_t{1} << (v & 63);
            }
        }
    }
};

} // namespace detail

// All inclusion-maximal cliques, each sorted ascending, the list sorted
// lexicographically.  Deterministic.  Throws budget_exhausted when the
// graph has more maximal cliques than the configured budget.
inline std::vector<std::vector<int>> maximal_cliques(const Graph& g, clique_options opts = {}) {
    const int n = g.vertex_count();
    if (n == 0) return {};
    detail::clique_enum ce{g, g.words_per_row(), opts.max_cliques};
    std::vector<std::uint64_t> p(static_cast<std::size_t>(g.words_per_row()), 0);
    for (int v = 0; v < n; ++v) p[v >> 6] |= std::uint64_t{1} << (v & 63);
    std::vector<std::uint64_t> x(static_cast<std::size_t>(g.words_per_row()), 0);
    ce.run(std::move(p), std::move(x));
    std::sort(ce.out.begin(), ce.out.end());
    return ce.out;
}

// A fractional cover: nonnegative weights on cliques whose per-vertex sums
// are all >= 1, with value equal to the total weight.
struct CliqueCover {
    Rational value;
    std::vector<std::pair<std::vector<int>, Rational>> weighted_cliques;
};

inline bool is_clique(const Graph& g, const std::vector<int>& c) {
    for (int v : c)
        if (v < 0 || v >= g.vertex_count()) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (c[i] == c[j] || !g.adjacent(c[i], c[j])) return false;
    return true;
}

// Checks the cover's stated invariants against g: every listed set is a
// clique, weights are nonnegative, every vertex is covered with total
// weight >= 1, and the value equals the weight sum.
inline bool verify_clique_cover(const Graph& g, const CliqueCover& cover) {
    Rational total(0);
    std::vector<Rational> coverage(static_cast<std::size_t>(g.vertex_count()), Rational(0));
    for (const auto& [clique, w] : cover.weighted_cliques) {
        if (!is_clique(g, clique)) return false;
        if (w < 0) return false;
        total += w;
        for (int v : clique) coverage[static_cast<std::size_t>(v)] += w;
    }
    for (const auto& c : coverage)
        if (c < 1) return false;
    return total == cover.value;
}

// Fractional clique covering number: the minimum total weight over maximal
// cliques subject to unit coverage of every vertex, solved exactly.  The
// witness keeps only the cliques with nonzero weight.
inline CliqueCover fractional_clique_cover_number(const Graph& g, clique_options opts = {}) {
    CliqueCover cover;
    cover.value = 0;
    if (g.vertex_count() == 0) return cover;

    const auto cliques = maximal_cliques(g, opts);
    LinearProgram lp;
    lp.num_vars = static_cast<int>(cliques.size());
    lp.objective.assign(cliques.size(), Rational(1));
    for (int v = 0; v < g.vertex_count(); ++v) {
        LinearConstraint row;
        row.coeffs.assign(cliques.size(), Rational(0));
        for (std::size_t c = 0; c < cliques.size(); ++c)
            if (std::binary_search(cliques[c].begin(), cliques[c].end(), v)) row.coeffs[c] = 1;
        row.relation = '>';
        row.rhs = 1;
        lp.constraints.push_back(std::move(row));
    }
    const SimplexResult res = rational_simplex(lp);
    if (res.status != lp_status::optimal)
        throw std::logic_error("fractional_clique_cover_number: covering LP must be solvable");
    cover.value = res.value;
    for (std::size_t c = 0; c < cliques.size(); ++c)
        if (res.solution[c] != 0) cover.weighted_cliques.emplace_back(cliques[c], res.solution[c]);
    if (!verify_clique_cover(g, cover))
        throw std::logic_error("fractional_clique_cover_number: produced cover failed verification");
    return cover;
}

inline nlohmann::ordered_json cover_to_json(const CliqueCover& cover) {
    nlohmann::ordered_json j;
    j["value"] = to_string(cover.value);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [clique, w] : cover.weighted_cliques) {
        nlohmann::ordered_json e;
        e["vertices"] = clique;
        e["weight"] = to_string(w);
        arr.push_back(std::move(e));
    }
    j["cliques"] = std::move(arr);
    return j;
}

inline CliqueCover cover_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("value") || !j.contains("cliques"))
        throw std::invalid_argument("cover json: expected {\"value\", \"cliques\"}");
    CliqueCover cover;
    cover.value = parse_rational(j.at("value").get<std::string>());
    for (const auto& e : j.at("cliques")) {
        std::vector<int> clique = e.at("vertices").get<std::vector<int>>();
        Rational w = parse_rational(e.at("weight").get<std::string>());
        cover.weighted_cliques.emplace_back(std::move(clique), std::move(w));
    }
    return cover;
}

} // namespace cohomord
