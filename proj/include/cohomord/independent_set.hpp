#pragma once

#include "cohomord/errors.hpp"
#include "cohomord/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace cohomord {

struct alpha_options {
    long long node_budget = 10'000'000;
    // Stop as soon as an independent set of this size is found (0 = exact).
    // With a target the result can be non-maximum but is always independent.
    int stop_at_size = 0;
};

namespace detail {

inline int popcount_words(const std::uint64_t* a, int words) {
    int c = 0;
    for (int i = 0; i < words; ++i) c += std::popcount(a[i]);
    return c;
}

inline int popcount_and(const std::uint64_t* a, const std::uint64_t* b, int words) {
    int c = 0;
    for (int i = 0; i < words; ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

struct mis_search {
    const Graph& g;
    int words;
    alpha_options opts;
    long long nodes = 0;
    bool stopped = false;
    std::vector<int> best, cur;

    // Upper bound on the independence number of g[P]: a greedy partition of
    // P into cliques (each clique contributes at most one vertex).  Vertices
    // are taken in ascending index order; each joins the first clique it is
    // fully adjacent to.  `common[k]` holds the intersection of the
    // neighborhoods of clique k's members.
    int clique_cover_bound(const std::vector<std::uint64_t>& p) {
        static thread_local std::vector<std::vector<std::uint64_t>> common;
        common.clear();
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = p[w];
            while (bits) {
                const int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                bool placed = false;
                for (auto& c : common) {
                    if ((c[v >> 6] >> (v & 63)) & 1u) {
                        const std::uint64_t* r = g.row(v);
                        for (int i = 0; i < words; ++i) c[i] &= r[i];
                        placed = true;
                        break;
                    }
                }
                if (!placed) common.emplace_back(g.row(v), g.row(v) + words);
            }
        }
        return static_cast<int>(common.size());
    }

    void expand(std::vector<std::uint64_t>& p) {
        if (stopped) return;
        if (++nodes > opts.node_budget)
            throw budget_exhausted("independent set search: node budget exhausted");
        if (popcount_words(p.data(), words) == 0) {
            if (cur.size() > best.size()) {
                best = cur;
                if (opts.stop_at_size > 0 && static_cast<int>(best.size()) >= opts.stop_at_size) stopped = true;
            }
            return;
        }
        if (static_cast<int>(cur.size()) + clique_cover_bound(p) <= static_cast<int>(best.size())) return;

        // Branch on the vertex of maximum degree within g[P]; ties go to the
        // lowest index.
        int bv = -1, bd = -1;
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = p[w];
            while (bits) {
                const int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const int d = popcount_and(g.row(v), p.data(), words);
                if (d > bd) {
                    bd = d;
                    bv = v;
                }
            }
        }

        std::vector<std::uint64_t> q(words);
        // Include bv: drop it and its neighbors from the candidates.
        const std::uint64_t* r = g.row(bv);
        for (int i = 0; i < words; ++i) q[i] = p[i] & ~r[i];
        q[bv >> 6] &= ~(std::uint64_t{1} << (bv & 63));
        cur.push_back(bv);
        expand(q);
        cur.pop_back();
        if (stopped) return;
        // Exclude bv.
        for (int i = 0; i < words; ++i) q[i] = p[i];
        q[bv >> 6] &= ~(std::uint64_t{1} << (bv & 63));
        expand(q);
    }
};

} // namespace detail

// A maximum independent set (exact unless opts.stop_at_size cut the search
// short), found by branch and bound with the greedy clique-cover bound.
// Deterministic; throws budget_exhausted if the node budget runs out before
// the claim is settled.
inline std::vector<int> max_independent_set(const Graph& g, alpha_options opts = {}) {
    const int n = g.vertex_count();
    if (n == 0) return {};
    detail::mis_search s{g, g.words_per_row(), opts};
    std::vector<std::uint64_t> all(static_cast<std::size_t>(g.words_per_row()), 0);
    for (int v = 0; v < n; ++v) all[v >> 6] |= std::uint64_t{1} << (v & 63);
    s.expand(all);
    std::sort(s.best.begin(), s.best.end());
    return s.best;
}

inline int independence_number(const Graph& g, alpha_options opts = {}) {
    opts.stop_at_size = 0;
    return static_cast<int>(max_independent_set(g, opts).size());
}

// Valid independent set: vertices in range, pairwise distinct, pairwise
// non-adjacent.
inline bool is_independent_set(const Graph& g, std::span<const int> s) {
    for (int v : s)
        if (v < 0 || v >= g.vertex_count()) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j] || g.adjacent(s[i], s[j])) return false;
    return true;
}

// Product set {a * |V(g2)| + b} in the strong product g1 ⊠ g2 (left factor
// most significant).  Inputs must be independent; the output is then
// independent in the product, and is returned sorted.
inline std::vector<int> product_independent_set(const Graph& g1, std::span<const int> s1,
                                                const Graph& g2, std::span<const int> s2) {
    if (!is_independent_set(g1, s1) || !is_independent_set(g2, s2))
        throw std::invalid_argument("product_independent_set: inputs must be independent sets");
    std::vector<int> out;
    out.reserve(s1.size() * s2.size());
    for (int a : s1)
        for (int b : s2) out.push_back(a * g2.vertex_count() + b);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cohomord
