#pragma once

#include "cohomord/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cohomord {

enum class lp_status { optimal, infeasible, unbounded };

inline const char* to_string(lp_status s) {
    switch (s) {
        case lp_status::optimal: return "optimal";
        case lp_status::infeasible: return "infeasible";
        case lp_status::unbounded: return "unbounded";
    }
    return "?";
}

// relation: '<' means <=, '>' means >=, '=' means equality.
struct LinearConstraint {
    std::vector<Rational> coeffs;
    char relation = '>';
    Rational rhs;
};

// Minimize objective · x subject to the constraints and x >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rational> objective;
    std::vector<LinearConstraint> constraints;
};

struct SimplexResult {
    lp_status status = lp_status::optimal;
    Rational value;                  // meaningful for optimal only
    std::vector<Rational> solution;  // one value per original variable
};

namespace detail {

// Dense exact-rational tableau.  The cost row holds reduced costs for
// minimization (optimal when none is negative) with -objective in its last
// cell.  Entering column: lowest index with negative reduced cost; leaving
// row: minimum ratio, ties by lowest basis variable index (Bland's rule, so
// the walk never cycles).
struct simplex_tableau {
    std::vector<std::vector<Rational>> rows; // m x (total_cols + 1)
    std::vector<Rational> cost;              // total_cols + 1
    std::vector<int> basis;                  // basis[i] = variable of row i
    std::vector<bool> usable;                // entering candidates
    int total_cols = 0;

    void pivot(int r, int c) {
        const Rational p = rows[r][c];
        for (auto& x : rows[r]) x /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (int j = 0; j <= total_cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        if (cost[c] != 0) {
            const Rational f = cost[c];
            for (int j = 0; j <= total_cols; ++j) cost[j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    // Runs to optimality; false means unbounded.
    bool iterate() {
        for (;;) {
            int entering = -1;
            for (int j = 0; j < total_cols; ++j)
                if (usable[j] && cost[j] < 0) {
                    entering = j;
                    break;
                }
            if (entering < 0) return true;
            int leaving = -1;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][entering] <= 0) continue;
                Rational ratio = rows[i][total_cols] / rows[i][entering];
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leaving])) {
                    leaving = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
    }

    // Recompute the cost row for objective c (indexed over all columns).
    void load_costs(const std::vector<Rational>& c) {
        cost.assign(total_cols + 1, Rational(0));
        for (int j = 0; j < total_cols; ++j) cost[j] = c[j];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational cb = c[basis[i]];
            if (cb == 0) continue;
            for (int j = 0; j <= total_cols; ++j) cost[j] -= cb * rows[i][j];
        }
    }
};

} // namespace detail

inline SimplexResult rational_simplex(const LinearProgram& lp) {
    const int n = lp.num_vars;
    if (n < 0) throw std::invalid_argument("rational_simplex: negative variable count");
    if (static_cast<int>(lp.objective.size()) != n)
        throw std::invalid_argument("rational_simplex: objective size mismatch");
    const int m = static_cast<int>(lp.constraints.size());
    for (const auto& c : lp.constraints) {
        if (static_cast<int>(c.coeffs.size()) != n)
            throw std::invalid_argument("rational_simplex: constraint size mismatch");
        if (c.relation != '<' && c.relation != '>' && c.relation != '=')
            throw std::invalid_argument("rational_simplex: bad relation");
    }

    // Normalize to rows with nonnegative right-hand side, then attach one
    // slack or surplus column per inequality and one artificial column per
    // row that lacks an identity column.
    struct Row {
        std::vector<Rational> a;
        char rel;
        Rational b;
    };
    std::vector<Row> norm;
    norm.reserve(m);
    for (const auto& c : lp.constraints) {
        Row r{c.coeffs, c.relation, c.rhs};
        if (r.b < 0) {
            for (auto& x : r.a) x = -x;
            r.b = -r.b;
            if (r.rel == '<') r.rel = '>';
            else if (r.rel == '>') r.rel = '<';
        }
        norm.push_back(std::move(r));
    }

    int slack_cols = 0;
    for (const auto& r : norm)
        if (r.rel != '=') ++slack_cols;
    int artificial_cols = 0;
    for (const auto& r : norm)
        if (r.rel != '<') ++artificial_cols;

    detail::simplex_tableau t;
    t.total_cols = n + slack_cols + artificial_cols;
    t.usable.assign(t.total_cols, true);
    t.basis.assign(m, -1);
    t.rows.assign(m, std::vector<Rational>(t.total_cols + 1, Rational(0)));

    int next_slack = n;
    int next_art = n + slack_cols;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t.rows[i][j] = norm[i].a[j];
        t.rows[i][t.total_cols] = norm[i].b;
        if (norm[i].rel == '<') {
            t.rows[i][next_slack] = 1;
            t.basis[i] = next_slack++;
        } else if (norm[i].rel == '>') {
            t.rows[i][next_slack] = -1;
            ++next_slack;
            t.rows[i][next_art] = 1;
            t.basis[i] = next_art++;
        } else {
            t.rows[i][next_art] = 1;
            t.basis[i] = next_art++;
        }
    }

    if (artificial_cols > 0) {
        std::vector<Rational> phase1(t.total_cols, Rational(0));
        for (int j = n + slack_cols; j < t.total_cols; ++j) phase1[j] = 1;
        t.load_costs(phase1);
        if (!t.iterate()) throw std::logic_error("rational_simplex: phase 1 unbounded");
        if (-t.cost[t.total_cols] != 0) return {lp_status::infeasible, Rational(0), {}};
        // Pivot residual basic artificials out on any usable column, or drop
        // the (redundant, zero) row entirely.
        for (int i = static_cast<int>(t.rows.size()) - 1; i >= 0; --i) {
            if (t.basis[i] < n + slack_cols) continue;
            int col = -1;
            for (int j = 0; j < n + slack_cols; ++j)
                if (t.rows[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                t.pivot(i, col);
            } else {
                t.rows.erase(t.rows.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
        for (int j = n + slack_cols; j < t.total_cols; ++j) t.usable[j] = false;
    }

    std::vector<Rational> phase2(t.total_cols, Rational(0));
    for (int j = 0; j < n; ++j) phase2[j] = lp.objective[j];
    t.load_costs(phase2);
    if (!t.iterate()) return {lp_status::unbounded, Rational(0), {}};

    SimplexResult res;
    res.status = lp_status::optimal;
    res.value = -t.cost[t.total_cols];
    res.solution.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n) res.solution[t.basis[i]] = t.rows[i][t.total_cols];
    return res;
}

} // namespace cohomord
