#pragma once

#include "cohomord/polynomial.hpp"
#include "cohomord/rational.hpp"
#include "cohomord/word_order.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohomord {

struct Line {
    Rational slope;
    Rational intercept;

    Rational eval(const Rational& x) const { return slope * x + intercept; }

    bool operator==(const Line&) const = default;
};

inline RationalPolynomial to_polynomial(const Line& l) {
    return make_polynomial({l.intercept, l.slope});
}

struct LineTableEntry {
    Line line;
    Rational witness; // r_w, strictly inside the table's interval

    bool operator==(const LineTableEntry&) const = default;
};

// One line and one witness value per word, on a fixed interval (s, t).
// The two defining properties, checked exactly by verify_line_table:
//   (i)  v below w in the prefix order, v != w  =>  slope and intercept of v
//        are strictly below those of w;
//   (ii) v not below w  =>  the line of v beats the line of w at v's witness.
struct LineTable {
    Rational s;
    Rational t;
    std::map<Word, LineTableEntry, ShortlexLess> entries;
};

struct LineTableViolation {
    Word v;
    Word w;
    std::string kind; // "interval", "coefficient-bound", "witness-range",
                      // "coefficients", "witness-dominance"
};

struct LineTableReport {
    std::vector<LineTableViolation> violations;
    std::size_t pair_count = 0;        // ordered pairs examined (n^2)
    unsigned max_denominator_bits = 0; // cost measure across all table rationals

    bool ok() const { return violations.empty(); }
};

namespace detail {

inline unsigned bit_length(const Int& x) {
    if (x == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(x < 0 ? Int(-x) : x)) + 1;
}

inline unsigned denominator_bits(const Rational& x) { return bit_length(denominator(x)); }

} // namespace detail

inline LineTableReport verify_line_table(const LineTable& tbl) {
    LineTableReport rep;
    if (!(tbl.s >= 1 && tbl.s < tbl.t)) rep.violations.push_back({"", "", "interval"});
    for (const auto& [w, e] : tbl.entries) {
        if (!(e.line.slope > 2 && e.line.intercept > 2))
            rep.violations.push_back({w, "", "coefficient-bound"});
        if (!(e.witness > tbl.s && e.witness < tbl.t))
            rep.violations.push_back({w, "", "witness-range"});
        rep.max_denominator_bits =
            std::max({rep.max_denominator_bits, detail::denominator_bits(e.line.slope),
                      detail::denominator_bits(e.line.intercept),
                      detail::denominator_bits(e.witness)});
    }
    rep.pair_count = tbl.entries.size() * tbl.entries.size();
    for (const auto& [v, ev] : tbl.entries)
        for (const auto& [w, ew] : tbl.entries) {
            if (v == w) continue;
            if (word_leq(v, w)) {
                if (!(ev.line.slope < ew.line.slope && ev.line.intercept < ew.line.intercept))
                    rep.violations.push_back({v, w, "coefficients"});
            } else {
                if (!(ev.line.eval(ev.witness) > ew.line.eval(ev.witness)))
                    rep.violations.push_back({v, w, "witness-dominance"});
            }
        }
    return rep;
}

// Builds the table for all words of length <= depth, level by level in
// shortlex order.  Each parent u spawns the sibling pair (u0, u1) via
//   a_u0 = a_u - (1-mu)eps, b_u0 = b_u - 2eps,
//   a_u1 = a_u - eps,       b_u1 = b_u - eps,      mu = 1/r_u,
// so the two child lines intersect exactly at r_u.  eps is halved from 1/2
// until the finite constraint set below holds, then the child witnesses are
// split off r_u by a likewise-halved delta.  Both halvings terminate for
// mathematical reasons; the iteration cap only converts a broken
// implementation into a loud failure instead of a spin.
inline LineTable build_line_table(int depth, const Rational& s, const Rational& t,
                                  const Rational& seed_a, const Rational& seed_b,
                                  const Rational& seed_r, int halving_cap = 20000) {
    if (depth < 0) throw std::invalid_argument("build_line_table: depth must be >= 0");
    if (!(s >= 1 && s < t))
        throw std::invalid_argument("build_line_table: interval must satisfy 1 <= s < t");
    if (!(seed_a > 2 && seed_b > 2))
        throw std::invalid_argument("build_line_table: seed coefficients must exceed 2");
    if (!(seed_r > s && seed_r < t))
        throw std::invalid_argument("build_line_table: seed witness must lie strictly inside (s, t)");

    LineTable tbl;
    tbl.s = s;
    tbl.t = t;
    tbl.entries[""] = {Line{seed_a, seed_b}, seed_r};

    for (int level = 1; level <= depth; ++level) {
        std::vector<Word> parents;
        for (const auto& [w, e] : tbl.entries)
            if (static_cast<int>(w.size()) == level - 1) parents.push_back(w);

        for (const Word& u : parents) {
            const LineTableEntry parent = tbl.entries.at(u);
            const Rational mu = Rational(1) / parent.witness;

            // prior entries, grouped by which constraints apply to them
            std::vector<const LineTableEntry*> others;      // every prior entry except u
            std::vector<const LineTableEntry*> non_ancestors; // prior v that are not a prefix of u
            for (const auto& [v, ev] : tbl.entries) {
                if (v != u) others.push_back(&ev);
                if (!word_leq(u, v)) non_ancestors.push_back(&ev);
            }

            Line l0, l1;
            Rational eps(1, 2);
            int rounds = 0;
            for (;; eps /= 2) {
                if (++rounds > halving_cap)
                    throw std::logic_error("build_line_table: eps halving failed to settle");
                l0 = Line{parent.line.slope - (1 - mu) * eps, parent.line.intercept - 2 * eps};
                l1 = Line{parent.line.slope - eps, parent.line.intercept - eps};
                if (!(l0.slope > 2 && l0.intercept > 2 && l1.slope > 2 && l1.intercept > 2))
                    continue;
                bool ok = true;
                for (const LineTableEntry* ev : others) {
                    const Rational bound = ev->line.eval(ev->witness);
                    if (!(l0.eval(ev->witness) < bound && l1.eval(ev->witness) < bound)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    for (const LineTableEntry* ev : non_ancestors) {
                        const Rational rival = ev->line.eval(parent.witness);
                        if (!(l0.eval(parent.witness) > rival && l1.eval(parent.witness) > rival)) {
                            ok = false;
                            break;
                        }
                    }
                if (ok) break;
            }

            Rational r0, r1;
            Rational delta = (t - parent.witness) / 2;
            rounds = 0;
            for (;; delta /= 2) {
                if (++rounds > halving_cap)
                    throw std::logic_error("build_line_table: delta halving failed to settle");
                r0 = parent.witness + delta;
                r1 = parent.witness - delta;
                if (!(r0 > s && r0 < t && r1 > s && r1 < t)) continue;
                bool ok = l0.eval(r0) > l1.eval(r0) && l1.eval(r1) > l0.eval(r1);
                if (ok)
                    for (const LineTableEntry* ev : non_ancestors) {
                        if (!(l0.eval(r0) > ev->line.eval(r0) && l1.eval(r1) > ev->line.eval(r1))) {
                            ok = false;
                            break;
                        }
                    }
                if (ok) break;
            }

            tbl.entries[u + "0"] = {l0, r0};
            tbl.entries[u + "1"] = {l1, r1};
        }
    }

    auto rep = verify_line_table(tbl);
    if (!rep.ok())
        throw std::logic_error("build_line_table: construction failed its own verification (" +
                               std::to_string(rep.violations.size()) + " violations)");
    return tbl;
}

inline nlohmann::ordered_json table_to_json(const LineTable& tbl) {
    nlohmann::ordered_json j;
    j["interval"] = {to_string(tbl.s), to_string(tbl.t)};
    auto entries = nlohmann::ordered_json::object();
    for (const auto& [w, e] : tbl.entries) {
        nlohmann::ordered_json item;
        item["a"] = to_string(e.line.slope);
        item["b"] = to_string(e.line.intercept);
        item["r"] = to_string(e.witness);
        entries[w] = std::move(item);
    }
    j["entries"] = std::move(entries);
    return j;
}

inline LineTable table_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("interval") || !j.contains("entries"))
        throw std::invalid_argument("line table json: expected {\"interval\", \"entries\"}");
    const auto& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2)
        throw std::invalid_argument("line table json: interval must be a two-element array");
    LineTable tbl;
    tbl.s = parse_rational(iv.at(0).get<std::string>());
    tbl.t = parse_rational(iv.at(1).get<std::string>());
    for (const auto& [w, item] : j.at("entries").items()) {
        validate_word(w);
        LineTableEntry e;
        e.line.slope = parse_rational(item.at("a").get<std::string>());
        e.line.intercept = parse_rational(item.at("b").get<std::string>());
        e.witness = parse_rational(item.at("r").get<std::string>());
        tbl.entries[w] = std::move(e);
    }
    return tbl;
}

// The concurrent antichain family: for n = 1..n_max,
//   l_n(x) = ((2rn + sn - s)/(rn)) x + (2n+1)/n.
// All members pass through (r/s, 2r/s + 3); slopes increase with n, so the
// lines fan out around the common point.
inline std::vector<Line> antichain_lines(int n_max, long long r, long long s) {
    if (n_max < 1) throw std::invalid_argument("antichain_lines: n_max must be >= 1");
    if (r < 1 || s < 1) throw std::invalid_argument("antichain_lines: r and s must be >= 1");
    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(n_max));
    for (long long n = 1; n <= n_max; ++n) {
        Line l;
        l.slope = Rational(Int(2) * r * n + Int(s) * n - s, Int(r) * n);
        l.intercept = Rational(2 * n + 1, n);
        lines.push_back(std::move(l));
    }
    return lines;
}

// The three lines of the counterexample to "pointwise comparison suffices":
// 6x + 7 and 3x + 14 cross at 7/3, where both meet the constant 21.
inline std::array<Line, 3> counterexample_lines() {
    return {Line{6, 7}, Line{3, 14}, Line{0, 21}};
}

// For the k-th lexicographic permutation sigma of {1..n} and the k-th
// smallest of the n! supplied points, the returned polynomials satisfy
// p_{sigma(1)} > ... > p_{sigma(n)} there.  Interpolation fixes the
// orderings; the common shift C (1 + x + ... + x^{n!-1}) with the smallest
// integer C that pushes every coefficient to >= 2 preserves them at every
// point, since all members move by the same amount.
inline std::vector<RationalPolynomial> ordering_polynomials(int n, std::vector<Rational> points,
                                                            const Rational& s, const Rational& t) {
    if (n < 1) throw std::invalid_argument("ordering_polynomials: n must be >= 1");
    if (!(s < t)) throw std::invalid_argument("ordering_polynomials: interval must satisfy s < t");
    std::size_t factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= static_cast<std::size_t>(i);
    if (points.size() != factorial)
        throw std::invalid_argument("ordering_polynomials: expected n! = " +
                                    std::to_string(factorial) + " points, got " +
                                    std::to_string(points.size()));
    for (const Rational& x : points)
        if (!(x > s && x < t))
            throw std::invalid_argument("ordering_polynomials: point " + to_string(x) +
                                        " is not strictly inside the interval");
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (points[i] == points[i + 1])
            throw std::invalid_argument("ordering_polynomials: duplicate point " +
                                        to_string(points[i]));

    std::vector<std::vector<std::pair<Rational, Rational>>> samples(
        static_cast<std::size_t>(n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (std::size_t k = 0; k < factorial; ++k) {
        for (int pos = 0; pos < n; ++pos)
            samples[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])].push_back(
                {points[k], Rational(n - pos)});
        std::next_permutation(perm.begin(), perm.end());
    }

    std::vector<RationalPolynomial> polys;
    polys.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) polys.push_back(interpolate(samples[static_cast<std::size_t>(i)]));

    Rational min_coeff = polys[0].coefficient(0);
    for (const auto& p : polys)
        for (std::size_t pos = 0; pos < factorial; ++pos)
            min_coeff = std::min(min_coeff, p.coefficient(pos));
    const Int shift = ceil_rational(2 - min_coeff);
    RationalPolynomial bump =
        Rational(shift) * make_polynomial(std::vector<Rational>(factorial, Rational(1)));
    for (auto& p : polys) p = p + bump;
    return polys;
}

} // namespace cohomord
