#pragma once

#include "cohomord/errors.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohomord {

// Finite simple graph on vertices 0..n-1.  Adjacency is a packed bit matrix
// (one fixed-width bitset row per vertex), which keeps the branch-and-bound
// and backtracking searches cheap.  Instances are treated as immutable once
// built; add_edge exists for the construction phase only.
class Graph {
public:
    // Materializations beyond this are refused outright; the configurable
    // caps used by callers are lower.
    static constexpr int hard_vertex_limit = 20000;

    Graph() = default;

    explicit Graph(int n, std::string label = "") : n_(n), label_(std::move(label)) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        if (n > hard_vertex_limit) throw cap_exceeded("Graph: vertex count " + std::to_string(n) + " exceeds hard limit");
        words_ = (n + 63) / 64;
        bits_.assign(static_cast<std::size_t>(n) * words_, 0);
    }

    Graph(int n, const std::vector<std::pair<int, int>>& edge_list, std::string label = "")
        : Graph(n, std::move(label)) {
        for (auto [u, v] : edge_list) add_edge(u, v);
    }

    int vertex_count() const { return n_; }
    int words_per_row() const { return words_; }

    bool adjacent(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return false;
        return (row(u)[v >> 6] >> (v & 63)) & 1u;
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("Graph: self-loops are not allowed");
        mutable_row(u)[v >> 6] |= std::uint64_t{1} << (v & 63);
        mutable_row(v)[u >> 6] |= std::uint64_t{1} << (u & 63);
    }

    // Packed neighbor bitset of v (words_per_row() words).
    const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }

    int degree(int v) const {
        check_vertex(v);
        int d = 0;
        const std::uint64_t* r = row(v);
        for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
        return d;
    }

    long long edge_count() const {
        long long total = 0;
        for (int v = 0; v < n_; ++v) total += degree(v);
        return total / 2;
    }

    // Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (adjacent(u, v)) out.emplace_back(u, v);
        return out;
    }

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    // Structural equality: vertex count and adjacency.  Labels are
    // presentation only and deliberately ignored.
    bool operator==(const Graph& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Graph: vertex " + std::to_string(v) + " out of range");
    }
    std::uint64_t* mutable_row(int v) { return bits_.data() + static_cast<std::size_t>(v) * words_; }

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::string label_;
};

inline Graph empty_graph(int n) { return Graph(n, "E_" + std::to_string(n)); }

inline Graph complete_graph(int n) {
    Graph g(n, "K_" + std::to_string(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// Circulant graph on Z_p: i ~ j iff the circular distance |i-j|_p is
// strictly between 0 and q.  The pair (p, q) is kept exactly as given; no
// gcd reduction, so (10, 4) yields a 10-vertex graph distinct from (5, 2).
inline Graph fraction_graph(long long p, long long q) {
    if (q < 1) throw std::invalid_argument("fraction_graph: q must be >= 1");
    if (p < 2 * q) throw std::invalid_argument("fraction_graph: requires p/q >= 2");
    if (p > Graph::hard_vertex_limit)
        throw cap_exceeded("fraction_graph: p = " + std::to_string(p) + " exceeds hard limit");
    Graph g(static_cast<int>(p), "F(" + std::to_string(p) + "/" + std::to_string(q) + ")");
    for (long long i = 0; i < p; ++i)
        for (long long d = 1; d < q; ++d) g.add_edge(static_cast<int>(i), static_cast<int>((i + d) % p));
    return g;
}

inline Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    Graph c(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) c.add_edge(u, v);
    return c;
}

// Strong product: (u1, u2) ~ (v1, v2) iff each coordinate pair is equal or
// adjacent and the tuples differ.  Vertex (u1, u2) gets index
// u1 * |V(h)| + u2 — the left factor is the most significant digit.
inline Graph strong_product(const Graph& g, const Graph& h) {
    const long long n = static_cast<long long>(g.vertex_count()) * h.vertex_count();
    if (n > Graph::hard_vertex_limit)
        throw cap_exceeded("strong_product: " + std::to_string(n) + " vertices exceeds hard limit");
    Graph p(static_cast<int>(n));
    const int nh = h.vertex_count();
    for (int u1 = 0; u1 < g.vertex_count(); ++u1)
        for (int u2 = 0; u2 < nh; ++u2)
            for (int v1 = u1; v1 < g.vertex_count(); ++v1) {
                if (v1 != u1 && !g.adjacent(u1, v1)) continue;
                for (int v2 = 0; v2 < nh; ++v2) {
                    if (v1 == u1 && v2 <= u2) continue;
                    if (v2 != u2 && !h.adjacent(u2, v2)) continue;
                    p.add_edge(u1 * nh + u2, v1 * nh + v2);
                }
            }
    return p;
}

// Disjoint union; h's vertices are shifted by |V(g)|.
inline Graph disjoint_union(const Graph& g, const Graph& h) {
    const long long n = static_cast<long long>(g.vertex_count()) + h.vertex_count();
    if (n > Graph::hard_vertex_limit)
        throw cap_exceeded("disjoint_union: " + std::to_string(n) + " vertices exceeds hard limit");
    Graph u(static_cast<int>(n));
    for (auto [a, b] : g.edges()) u.add_edge(a, b);
    const int off = g.vertex_count();
    for (auto [a, b] : h.edges()) u.add_edge(a + off, b + off);
    return u;
}

// Join: disjoint union plus every cross edge.
inline Graph join(const Graph& g, const Graph& h) {
    Graph j = disjoint_union(g, h);
    const int off = g.vertex_count();
    for (int a = 0; a < g.vertex_count(); ++a)
        for (int b = 0; b < h.vertex_count(); ++b) j.add_edge(a, off + b);
    return j;
}

// n-fold strong power.  Vertex indices are mixed-radix tuples with the
// leftmost coordinate most significant, consistent with iterating
// strong_product(power(g, n-1), g).
inline Graph power(const Graph& g, int n) {
    if (n < 1) throw std::invalid_argument("power: exponent must be >= 1");
    Graph p = g;
    for (int i = 1; i < n; ++i) p = strong_product(p, g);
    return p;
}

// Subgraph induced by the given vertices, in the given order (which must be
// duplicate-free); vertex i of the result corresponds to vertices[i].
inline Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
    Graph s(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (vertices[i] == vertices[j]) throw std::invalid_argument("induced_subgraph: duplicate vertex");
            if (g.adjacent(vertices[i], vertices[j])) s.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    return s;
}

} // namespace cohomord
