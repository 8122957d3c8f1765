#pragma once

#include "cohomord/errors.hpp"
#include "cohomord/graph.hpp"
#include "cohomord/polynomial.hpp"
#include "cohomord/rational.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohomord {

// Symbolic graph expression: fraction atoms F(p/q), one generator symbol g,
// strong product *, disjoint union |, join +, and integer powers.  Fractions
// are kept unreduced, exactly as written.
struct GraphExpr;
using ExprPtr = std::shared_ptr<const GraphExpr>;

struct GraphExpr {
    enum class Kind { fraction, generator, strong_product, disjoint_union, join, power };

    Kind kind;
    Int p = 0, q = 1;        // fraction
    ExprPtr left, right;     // binary nodes; power uses left only
    int exponent = 0;        // power
};

inline ExprPtr fraction_atom(Int p, Int q) {
    if (q < 1) throw std::invalid_argument("fraction atom: denominator must be >= 1");
    if (p < 2 * q) throw std::invalid_argument("fraction atom: requires p/q >= 2");
    auto e = std::make_shared<GraphExpr>();
    e->kind = GraphExpr::Kind::fraction;
    e->p = std::move(p);
    e->q = std::move(q);
    return e;
}

inline ExprPtr generator_atom() {
    auto e = std::make_shared<GraphExpr>();
    e->kind = GraphExpr::Kind::generator;
    return e;
}

namespace detail {

inline ExprPtr binary_expr(GraphExpr::Kind kind, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<GraphExpr>();
    e->kind = kind;
    e->left = std::move(a);
    e->right = std::move(b);
    return e;
}

} // namespace detail

inline ExprPtr strong_product_expr(ExprPtr a, ExprPtr b) {
    return detail::binary_expr(GraphExpr::Kind::strong_product, std::move(a), std::move(b));
}

inline ExprPtr disjoint_union_expr(ExprPtr a, ExprPtr b) {
    return detail::binary_expr(GraphExpr::Kind::disjoint_union, std::move(a), std::move(b));
}

inline ExprPtr join_expr(ExprPtr a, ExprPtr b) {
    return detail::binary_expr(GraphExpr::Kind::join, std::move(a), std::move(b));
}

inline ExprPtr power_expr(ExprPtr base, int n) {
    if (n < 1) throw std::invalid_argument("power expression: exponent must be >= 1");
    auto e = std::make_shared<GraphExpr>();
    e->kind = GraphExpr::Kind::power;
    e->left = std::move(base);
    e->exponent = n;
    return e;
}

inline bool expr_equal(const GraphExpr& a, const GraphExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case GraphExpr::Kind::fraction: return a.p == b.p && a.q == b.q;
        case GraphExpr::Kind::generator: return true;
        case GraphExpr::Kind::power:
            return a.exponent == b.exponent && expr_equal(*a.left, *b.left);
        default: return expr_equal(*a.left, *b.left) && expr_equal(*a.right, *b.right);
    }
}

// Exact value of the expression under the simulated spectral point that
// sends the generator to r: fractions to p/q, products multiply, disjoint
// unions add, joins take the maximum.
inline Rational eval_spectral(const GraphExpr& e, const Rational& r) {
    switch (e.kind) {
        case GraphExpr::Kind::fraction: return Rational(e.p, e.q);
        case GraphExpr::Kind::generator: return r;
        case GraphExpr::Kind::strong_product:
            return eval_spectral(*e.left, r) * eval_spectral(*e.right, r);
        case GraphExpr::Kind::disjoint_union:
            return eval_spectral(*e.left, r) + eval_spectral(*e.right, r);
        case GraphExpr::Kind::join:
            return std::max(eval_spectral(*e.left, r), eval_spectral(*e.right, r));
        case GraphExpr::Kind::power: return pow_rational(eval_spectral(*e.left, r), static_cast<unsigned>(e.exponent));
    }
    throw std::logic_error("eval_spectral: unreachable");
}

// ---------------------------------------------------------------------------
// Textual syntax.  Precedence from loosest to tightest: + (join), |
// (disjoint union), * (strong product), ^ (power); all left-associative.

namespace detail {

struct expr_parser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("expression parse error at offset " + std::to_string(pos) +
                                    ": " + what);
    }

    Int number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) fail("expected a number");
        return Int(text.substr(start, pos - start));
    }

    ExprPtr atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (eat('(')) {
            ExprPtr e = join();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (text[pos] == 'F') {
            ++pos;
            if (!eat('(')) fail("expected '(' after F");
            Int p = number();
            Int q = 1;
            if (eat('/')) q = number();
            if (!eat(')')) fail("expected ')' after fraction");
            return fraction_atom(std::move(p), std::move(q));
        }
        if (text[pos] == 'g') {
            ++pos;
            return generator_atom();
        }
        fail("expected 'F(...)', 'g', or '('");
    }

    ExprPtr power() {
        ExprPtr e = atom();
        while (eat('^')) {
            Int n = number();
            if (n < 1 || n > 1000000) fail("power exponent out of range");
            e = power_expr(std::move(e), static_cast<int>(n));
        }
        return e;
    }

    ExprPtr product() {
        ExprPtr e = power();
        while (eat('*')) e = strong_product_expr(std::move(e), power());
        return e;
    }

    ExprPtr unions() {
        ExprPtr e = product();
        while (eat('|')) e = disjoint_union_expr(std::move(e), product());
        return e;
    }

    ExprPtr join() {
        ExprPtr e = unions();
        while (eat('+')) e = join_expr(std::move(e), unions());
        return e;
    }
};

inline int expr_level(const GraphExpr& e) {
    switch (e.kind) {
        case GraphExpr::Kind::join: return 0;
        case GraphExpr::Kind::disjoint_union: return 1;
        case GraphExpr::Kind::strong_product: return 2;
        case GraphExpr::Kind::power: return 3;
        default: return 4;
    }
}

inline void print_expr(const GraphExpr& e, std::string& out) {
    const int level = expr_level(e);
    auto child = [&](const GraphExpr& c, bool needs_paren) {
        if (needs_paren) out += '(';
        print_expr(c, out);
        if (needs_paren) out += ')';
    };
    switch (e.kind) {
        case GraphExpr::Kind::fraction:
            out += "F(" + e.p.str();
            if (e.q != 1) out += "/" + e.q.str();
            out += ")";
            return;
        case GraphExpr::Kind::generator: out += 'g'; return;
        case GraphExpr::Kind::power:
            child(*e.left, expr_level(*e.left) < level);
            out += '^';
            out += std::to_string(e.exponent);
            return;
        default: {
            const char* op = e.kind == GraphExpr::Kind::join ? " + "
                             : e.kind == GraphExpr::Kind::disjoint_union ? " | "
                                                                         : " * ";
            child(*e.left, expr_level(*e.left) < level);
            out += op;
            child(*e.right, expr_level(*e.right) <= level);
            return;
        }
    }
}

} // namespace detail

inline ExprPtr parse_expr(const std::string& text) {
    detail::expr_parser p{text};
    ExprPtr e = p.join();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

inline std::string to_string(const GraphExpr& e) {
    std::string out;
    detail::print_expr(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Max-of-polynomials normal form: the expression's value at r equals the
// maximum of the members evaluated at r.  Joins become unions; sums and
// products distribute through max because every value in play is
// non-negative.

struct MaxPolyForm {
    std::vector<RationalPolynomial> members; // non-empty, sorted, deduplicated
};

namespace detail {

inline void canonicalize(std::vector<RationalPolynomial>& members, std::size_t budget) {
    std::sort(members.begin(), members.end(), polynomial_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() > budget)
        throw budget_exhausted("to_max_poly: member budget exceeded (" +
                               std::to_string(members.size()) + " polynomials)");
}

inline std::vector<RationalPolynomial> max_poly_rec(const GraphExpr& e, std::size_t budget) {
    std::vector<RationalPolynomial> out;
    switch (e.kind) {
        case GraphExpr::Kind::fraction: out.push_back(make_polynomial({Rational(e.p, e.q)})); break;
        case GraphExpr::Kind::generator:
            out.push_back(make_polynomial({Rational(0), Rational(1)}));
            break;
        case GraphExpr::Kind::join: {
            out = max_poly_rec(*e.left, budget);
            auto rhs = max_poly_rec(*e.right, budget);
            out.insert(out.end(), rhs.begin(), rhs.end());
            break;
        }
        case GraphExpr::Kind::disjoint_union:
        case GraphExpr::Kind::strong_product: {
            auto lhs = max_poly_rec(*e.left, budget);
            auto rhs = max_poly_rec(*e.right, budget);
            out.reserve(lhs.size() * rhs.size());
            for (const auto& a : lhs)
                for (const auto& b : rhs)
                    out.push_back(e.kind == GraphExpr::Kind::disjoint_union ? a + b : a * b);
            break;
        }
        case GraphExpr::Kind::power: {
            auto base = max_poly_rec(*e.left, budget);
            out = base;
            for (int i = 1; i < e.exponent; ++i) {
                std::vector<RationalPolynomial> next;
                next.reserve(out.size() * base.size());
                for (const auto& a : out)
                    for (const auto& b : base) next.push_back(a * b);
                out = std::move(next);
                canonicalize(out, budget);
            }
            break;
        }
    }
    canonicalize(out, budget);
    return out;
}

} // namespace detail

inline MaxPolyForm to_max_poly(const GraphExpr& e, std::size_t member_budget = 4096) {
    return MaxPolyForm{detail::max_poly_rec(e, member_budget)};
}

inline Rational eval_max_poly(const MaxPolyForm& f, const Rational& r) {
    if (f.members.empty()) throw std::invalid_argument("eval_max_poly: empty form");
    Rational best = f.members.front().eval(r);
    for (std::size_t i = 1; i < f.members.size(); ++i)
        best = std::max(best, f.members[i].eval(r));
    return best;
}

// Decides max P <= max Q across all of [s, t] for forms whose members are
// lines.  Sign changes of the difference can only happen where two involved
// lines cross, so comparing at the endpoints and at every pairwise crossing
// inside the interval is exhaustive.  Returns nullopt when dominance holds,
// otherwise the smallest checked r where max P(r) > max Q(r).
inline std::optional<Rational> envelope_leq(const MaxPolyForm& p, const MaxPolyForm& q,
                                            const Rational& s, const Rational& t) {
    if (p.members.empty() || q.members.empty())
        throw std::invalid_argument("envelope_leq: empty form");
    if (!(s < t)) throw std::invalid_argument("envelope_leq: interval must satisfy s < t");
    std::vector<RationalPolynomial> all;
    all.reserve(p.members.size() + q.members.size());
    for (const auto& m : p.members) all.push_back(m);
    for (const auto& m : q.members) all.push_back(m);
    for (const auto& m : all)
        if (m.degree() > 1)
            throw std::invalid_argument(
                "envelope_leq: members must be lines; compare higher degrees pointwise");

    std::vector<Rational> candidates{s, t};
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const Rational da = all[i].coefficient(1) - all[j].coefficient(1);
            if (da == 0) continue;
            const Rational x = (all[j].coefficient(0) - all[i].coefficient(0)) / da;
            if (x > s && x < t) candidates.push_back(x);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Rational& r : candidates)
        if (eval_max_poly(p, r) > eval_max_poly(q, r)) return r;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Materialization to a concrete graph.

namespace detail {

inline Int expr_size(const GraphExpr& e, const Int& generator_size) {
    switch (e.kind) {
        case GraphExpr::Kind::fraction: return e.p;
        case GraphExpr::Kind::generator: return generator_size;
        case GraphExpr::Kind::strong_product:
            return expr_size(*e.left, generator_size) * expr_size(*e.right, generator_size);
        case GraphExpr::Kind::disjoint_union:
        case GraphExpr::Kind::join:
            return expr_size(*e.left, generator_size) + expr_size(*e.right, generator_size);
        case GraphExpr::Kind::power:
            return pow_int(expr_size(*e.left, generator_size),
                           static_cast<unsigned>(e.exponent));
    }
    throw std::logic_error("expr_size: unreachable");
}

} // namespace detail

inline Int materialized_size(const GraphExpr& e, const Graph& generator) {
    return detail::expr_size(e, Int(generator.vertex_count()));
}

inline Graph materialize(const GraphExpr& e, const Graph& generator, int vertex_cap = 5000) {
    const Int size = materialized_size(e, generator);
    if (size > vertex_cap)
        throw cap_exceeded("materialize: expression would have " + size.str() +
                           " vertices (cap " + std::to_string(vertex_cap) + ")");
    switch (e.kind) {
        case GraphExpr::Kind::fraction:
            return fraction_graph(e.p.convert_to<long long>(), e.q.convert_to<long long>());
        case GraphExpr::Kind::generator: return generator;
        case GraphExpr::Kind::strong_product:
            return strong_product(materialize(*e.left, generator, vertex_cap),
                                  materialize(*e.right, generator, vertex_cap));
        case GraphExpr::Kind::disjoint_union:
            return disjoint_union(materialize(*e.left, generator, vertex_cap),
                                  materialize(*e.right, generator, vertex_cap));
        case GraphExpr::Kind::join:
            return join(materialize(*e.left, generator, vertex_cap),
                        materialize(*e.right, generator, vertex_cap));
        case GraphExpr::Kind::power:
            return power(materialize(*e.left, generator, vertex_cap), e.exponent);
    }
    throw std::logic_error("materialize: unreachable");
}

} // namespace cohomord
