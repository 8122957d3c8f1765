#pragma once

#include "cohomord/graph.hpp"
#include "cohomord/graph_expr.hpp"
#include "cohomord/simplex.hpp"

#include <optional>
#include <random>
#include <vector>

namespace testutil {

// Erdős–Rényi-style graph with integer-percent edge probability; fully
// deterministic for a fixed generator state.
inline cohomord::Graph random_graph(std::mt19937& rng, int n, int edge_percent) {
    cohomord::Graph g(n);
    std::uniform_int_distribution<int> dist(0, 99);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (dist(rng) < edge_percent) g.add_edge(u, v);
    return g;
}

// Reference independence number: plain recursion on the lowest remaining
// vertex (max over skipping it / taking it and dropping its closed
// neighborhood).  No bounding, no shared code with the library search.
inline int alpha_brute(const cohomord::Graph& g, std::vector<int> live) {
    if (live.empty()) return 0;
    const int v = live.front();
    std::vector<int> without;
    without.assign(live.begin() + 1, live.end());
    const int skip = alpha_brute(g, without);
    std::vector<int> reduced;
    for (int u : without)
        if (!g.adjacent(u, v)) reduced.push_back(u);
    const int take = 1 + alpha_brute(g, reduced);
    return std::max(skip, take);
}

inline int alpha_brute(const cohomord::Graph& g) {
    std::vector<int> live;
    for (int v = 0; v < g.vertex_count(); ++v) live.push_back(v);
    return alpha_brute(g, live);
}

// Reference LP solver by brute-force vertex enumeration: every subset of n
// constraint rows (including the x_j >= 0 rows) is solved as an exact linear
// system; feasible solutions are scored directly.  Valid for feasible
// bounded LPs whose feasible region is pointed (x >= 0 guarantees that);
// infeasibility is reported as "no feasible vertex".
struct lp_oracle_result {
    bool feasible = false;
    cohomord::Rational value;
};

inline std::optional<std::vector<cohomord::Rational>> solve_square(
    std::vector<std::vector<cohomord::Rational>> a, std::vector<cohomord::Rational> b) {
    using cohomord::Rational;
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline lp_oracle_result lp_vertex_oracle(const cohomord::LinearProgram& lp) {
    using cohomord::Rational;
    const int n = lp.num_vars;
    struct Row {
        std::vector<Rational> a;
        char rel;
        Rational b;
    };
    std::vector<Row> rows;
    for (const auto& c : lp.constraints) rows.push_back({c.coeffs, c.relation, c.rhs});
    for (int j = 0; j < n; ++j) {
        Row r{std::vector<Rational>(n, Rational(0)), '>', Rational(0)};
        r.a[j] = 1;
        rows.push_back(std::move(r));
    }
    auto satisfies = [&](const std::vector<Rational>& x) {
        for (const auto& r : rows) {
            Rational lhs(0);
            for (int j = 0; j < n; ++j) lhs += r.a[j] * x[j];
            if (r.rel == '>' && lhs < r.b) return false;
            if (r.rel == '<' && lhs > r.b) return false;
            if (r.rel == '=' && lhs != r.b) return false;
        }
        return true;
    };

    lp_oracle_result best;
    const int total = static_cast<int>(rows.size());
    std::vector<int> pick(n);
    auto recurse = [&](auto&& self, int idx, int from) -> void {
        if (idx == n) {
            std::vector<std::vector<Rational>> a;
            std::vector<Rational> b;
            for (int k : pick) {
                a.push_back(rows[k].a);
                b.push_back(rows[k].b);
            }
            auto x = solve_square(std::move(a), std::move(b));
            if (!x || !satisfies(*x)) return;
            Rational value(0);
            for (int j = 0; j < n; ++j) value += lp.objective[j] * (*x)[j];
            if (!best.feasible || value < best.value) {
                best.feasible = true;
                best.value = value;
            }
            return;
        }
        for (int k = from; k < total; ++k) {
            pick[idx] = k;
            self(self, idx + 1, k + 1);
        }
    };
    if (n == 0) {
        best.feasible = satisfies({});
        best.value = 0;
        return best;
    }
    recurse(recurse, 0, 0);
    return best;
}

// Random expression over fraction atoms and the generator symbol, for
// axiom/consistency property tests.  Sizes stay small enough to evaluate
// and (usually) materialize.
inline cohomord::ExprPtr random_expr(std::mt19937& rng, int depth) {
    using namespace cohomord;
    if (depth <= 0 || rng() % 3 == 0) {
        if (rng() % 3 == 0) return generator_atom();
        const long long q = 1 + static_cast<long long>(rng() % 3);
        const long long p = 2 * q + static_cast<long long>(rng() % 8);
        return fraction_atom(Int(p), Int(q));
    }
    switch (rng() % 4) {
        case 0: return strong_product_expr(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 1: return disjoint_union_expr(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 2: return join_expr(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        default: return power_expr(random_expr(rng, depth - 1), 1 + static_cast<int>(rng() % 3));
    }
}

} // namespace testutil
