#pragma once

#include "cohomord/errors.hpp"
#include "cohomord/graph.hpp"
#include "cohomord/graph_io.hpp"
#include "cohomord/independent_set.hpp"
#include "cohomord/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cohomord {

// A vertex map claimed to be a cohomomorphism: distinct non-adjacent source
// vertices go to distinct non-adjacent target vertices.  Claims are only
// trusted after verify_cohomomorphism.
struct VertexMap {
    Graph source;
    Graph target;
    std::vector<int> assignment; // assignment[u] = image of u
};

inline bool verify_cohomomorphism(const VertexMap& m) {
    const int n = m.source.vertex_count();
    if (static_cast<int>(m.assignment.size()) != n) return false;
    for (int u = 0; u < n; ++u)
        if (m.assignment[u] < 0 || m.assignment[u] >= m.target.vertex_count()) return false;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (m.source.adjacent(u, v)) continue;
            const int a = m.assignment[u], b = m.assignment[v];
            if (a == b || m.target.adjacent(a, b)) return false;
        }
    return true;
}

inline nlohmann::ordered_json map_to_json(const VertexMap& m) {
    nlohmann::ordered_json j;
    j["source"] = encode_graph6(m.source);
    j["target"] = encode_graph6(m.target);
    j["map"] = m.assignment;
    return j;
}

inline VertexMap map_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("map"))
        throw std::invalid_argument("vertex map json: expected {\"source\", \"target\", \"map\"}");
    VertexMap m;
    m.source = decode_graph6(j.at("source").get<std::string>());
    m.target = decode_graph6(j.at("target").get<std::string>());
    m.assignment = j.at("map").get<std::vector<int>>();
    if (static_cast<int>(m.assignment.size()) != m.source.vertex_count())
        throw std::invalid_argument("vertex map json: map length mismatch");
    for (int t : m.assignment)
        if (t < 0 || t >= m.target.vertex_count())
            throw std::invalid_argument("vertex map json: image out of range");
    return m;
}

// Composition g ∘ f; the middle graphs must agree structurally.  The result
// is re-verified whenever both inputs verify.
inline VertexMap compose(const VertexMap& f, const VertexMap& g) {
    if (f.target != g.source) throw std::invalid_argument("compose: inner graphs do not match");
    VertexMap out;
    out.source = f.source;
    out.target = g.target;
    out.assignment.reserve(f.assignment.size());
    for (int t : f.assignment) out.assignment.push_back(g.assignment.at(static_cast<std::size_t>(t)));
    return out;
}

struct search_options {
    long long node_budget = 10'000'000;
    // Testing hook: force the general backtracking route even for edgeless
    // sources, to cross-check it against the independence fast path.
    bool disable_edgeless_fastpath = false;
};

namespace detail {

// Backtracking search for a homomorphism between the complements, i.e. a
// cohomomorphism of the originals.  Forward checking on complement edges;
// the most constrained source vertex (smallest domain, then lowest index)
// is assigned first, candidate targets in ascending order.
struct cohom_search_state {
    const Graph& gc; // complement of source
    const Graph& hc; // complement of target
    int words;
    long long budget;
    long long nodes = 0;
    std::vector<int> assignment;
    std::vector<char> assigned;

    bool run(std::vector<std::vector<std::uint64_t>>& domains, int remaining) {
        if (remaining == 0) return true;
        int u = -1;
        int best = -1;
        for (int v = 0; v < gc.vertex_count(); ++v) {
            if (assigned[v]) continue;
            const int size = popcount_words(domains[v].data(), words);
            if (size == 0) return false;
            if (best < 0 || size < best) {
                best = size;
                u = v;
            }
        }
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = domains[u][w];
            while (bits) {
                const int t = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (++nodes > budget) throw budget_exhausted("find_cohomomorphism: node budget exhausted");
                assigned[u] = 1;
                assignment[u] = t;
                auto saved = domains;
                bool dead = false;
                for (int v = 0; v < gc.vertex_count() && !dead; ++v) {
                    if (assigned[v] || !gc.adjacent(u, v)) continue;
                    for (int i = 0; i < words; ++i) domains[v][i] &= hc.row(t)[i];
                    if (popcount_words(domains[v].data(), words) == 0) dead = true;
                }
                if (!dead && run(domains, remaining - 1)) return true;
                domains = std::move(saved);
                assigned[u] = 0;
            }
        }
        return false;
    }
};

// Coordinates of a vertex of g^⊠t, leftmost most significant.
inline std::vector<int> decode_power_index(long long idx, int t, long long base) {
    std::vector<int> digits(static_cast<std::size_t>(t));
    for (int i = t - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = static_cast<int>(idx % base);
        idx /= base;
    }
    return digits;
}

inline bool power_adjacent(const Graph& g, const std::vector<int>& a, const std::vector<int>& b) {
    bool all_equal = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            all_equal = false;
            if (!g.adjacent(a[i], b[i])) return false;
        }
    }
    return !all_equal;
}

} // namespace detail

// A verified cohomomorphism src → dst, or nullopt when none exists.  An
// edgeless source reduces to an independence certificate in the target
// (that fast path is the default); otherwise backtracking over the
// complements decides the question.  Deterministic; budget exits throw.
inline std::optional<VertexMap> find_cohomomorphism(const Graph& src, const Graph& dst,
                                                    search_options opts = {}) {
    VertexMap out;
    out.source = src;
    out.target = dst;
    const int n = src.vertex_count();
    if (n == 0) return out;

    if (!opts.disable_edgeless_fastpath && src.edge_count() == 0) {
        alpha_options ao;
        ao.node_budget = opts.node_budget;
        ao.stop_at_size = n;
        auto set = max_independent_set(dst, ao);
        if (static_cast<int>(set.size()) < n) return std::nullopt;
        out.assignment.assign(set.begin(), set.begin() + n);
        if (!verify_cohomomorphism(out))
            throw std::logic_error("find_cohomomorphism: fast path produced an invalid map");
        return out;
    }

    if (dst.vertex_count() == 0) return std::nullopt;
    const Graph gc = complement(src);
    const Graph hc = complement(dst);
    detail::cohom_search_state st{gc, hc, hc.words_per_row(), opts.node_budget};
    st.assignment.assign(static_cast<std::size_t>(n), -1);
    st.assigned.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> full(static_cast<std::size_t>(hc.words_per_row()), 0);
    for (int t = 0; t < dst.vertex_count(); ++t) full[t >> 6] |= std::uint64_t{1} << (t & 63);
    std::vector<std::vector<std::uint64_t>> domains(static_cast<std::size_t>(n), full);
    if (!st.run(domains, n)) return std::nullopt;
    out.assignment = st.assignment;
    if (!verify_cohomomorphism(out))
        throw std::logic_error("find_cohomomorphism: search produced an invalid map");
    return out;
}

// Map between circulants: i ↦ ⌊i·r/p⌋ from the (p,q) fraction graph into
// the (r,s) one, tried first whenever p/q <= r/s, with backtracking as the
// fallback; returns nullopt when p/q > r/s (no map exists then).
inline std::optional<VertexMap> circular_map(long long p, long long q, long long r, long long s,
                                             search_options opts = {}) {
    if (q < 1 || s < 1 || p < 2 * q || r < 2 * s)
        throw std::invalid_argument("circular_map: fractions must be >= 2");
    if (Rational(p, q) > Rational(r, s)) return std::nullopt;
    VertexMap m;
    m.source = fraction_graph(p, q);
    m.target = fraction_graph(r, s);
    m.assignment.reserve(static_cast<std::size_t>(p));
    for (long long i = 0; i < p; ++i) m.assignment.push_back(static_cast<int>(i * r / p));
    if (verify_cohomomorphism(m)) return m;
    return find_cohomomorphism(m.source, m.target, opts);
}

struct PowerHint {
    Graph base;
    int exponent = 1;
};

struct probe_options {
    long long node_budget = 10'000'000;
    // Exact independence numbers are computed on powers of the base factor
    // up to this many vertices when assembling product certificates.
    int factor_alpha_cap = 200;
    int materialize_cap = 5000;
    // Optional decomposition g = base^⊠exponent; verified, never trusted.
    std::optional<PowerHint> hint;
};

struct ProbeResult {
    int k = 0;
    // Certificate for an edgeless source: an independent set in g^⊠(n+k),
    // verified coordinate-wise (empty for the identity fast path).
    std::vector<long long> independent_set;
    // Explicit map when the materialized search route was used.
    std::optional<VertexMap> map;
};

// Smallest k <= k_max such that h^⊠n maps cohomomorphically into g^⊠(n+k),
// with a verified certificate.  Scanning is in ascending k and each k is
// either certified, exactly refuted, or the probe exits loudly — a larger k
// is never returned on the strength of an undecided smaller one.
inline std::optional<ProbeResult> power_relation_probe(const Graph& h, const Graph& g, int n,
                                                       int k_max, const probe_options& opts = {}) {
    if (n < 1) throw std::invalid_argument("power_relation_probe: n must be >= 1");
    if (k_max < 0) throw std::invalid_argument("power_relation_probe: k_max must be >= 0");
    if (opts.hint) {
        if (opts.hint->exponent < 1)
            throw std::invalid_argument("power_relation_probe: hint exponent must be >= 1");
        if (power(opts.hint->base, opts.hint->exponent) != g)
            throw std::invalid_argument("power_relation_probe: hint does not reproduce g");
    }

    if (h.vertex_count() == 0) return ProbeResult{0, {}, VertexMap{h, g, {}}};

    if (h == g) {
        ProbeResult res;
        res.k = 0;
        Int size = pow_int(Int(g.vertex_count()), static_cast<unsigned>(n));
        if (size <= opts.materialize_cap) {
            Graph p = power(g, n);
            VertexMap identity{p, p, {}};
            identity.assignment.resize(static_cast<std::size_t>(p.vertex_count()));
            for (int v = 0; v < p.vertex_count(); ++v) identity.assignment[static_cast<std::size_t>(v)] = v;
            res.map = std::move(identity);
        }
        return res;
    }

    const bool edgeless = h.edge_count() == 0;
    const Int m(h.vertex_count());

    if (edgeless) {
        const Graph& base = opts.hint ? opts.hint->base : g;
        const int exponent = opts.hint ? opts.hint->exponent : 1;
        const Int needed = pow_int(m, static_cast<unsigned>(n));

        // Exact independent sets of small base powers, shared across k.
        std::map<int, std::vector<int>> base_sets;
        auto base_set = [&](int j) -> const std::vector<int>& {
            auto it = base_sets.find(j);
            if (it != base_sets.end()) return it->second;
            alpha_options ao;
            ao.node_budget = opts.node_budget;
            auto s = max_independent_set(power(base, j), ao);
            return base_sets.emplace(j, std::move(s)).first->second;
        };
        int j_cap = 0;
        if (base.vertex_count() > 1) {
            Int sz(base.vertex_count());
            while (sz <= opts.factor_alpha_cap) {
                ++j_cap;
                sz *= base.vertex_count();
            }
        }

        for (int k = 0; k <= k_max; ++k) {
            const int t = n + k;
            const int total = exponent * t; // base-power coordinates
            const Int target_size = pow_int(Int(g.vertex_count()), static_cast<unsigned>(t));

            // Best product certificate: floor(total/j) blocks from the best
            // small power plus one remainder block.
            int best_j = 0;
            Int best_value(-1);
            for (int j = 1; j <= std::min(j_cap, total); ++j) {
                const Int sj(base_set(j).size());
                if (sj == 0) continue;
                const int rem = total % j;
                if (rem > 0 && base_set(rem).empty()) continue;
                Int value = pow_int(sj, static_cast<unsigned>(total / j));
                if (rem > 0) value *= static_cast<long long>(base_set(rem).size());
                if (value > best_value) {
                    best_value = value;
                    best_j = j;
                }
            }

            if (best_value >= needed && needed > 0) {
                if (pow_int(Int(g.vertex_count()), static_cast<unsigned>(t)) > Int(std::int64_t(1) << 62))
                    throw cap_exceeded("power_relation_probe: power index range overflows");
                // Assemble the product tuples block by block.
                std::vector<std::vector<std::vector<int>>> blocks; // block -> element -> digits
                auto block_of = [&](int j) {
                    std::vector<std::vector<int>> elems;
                    for (int v : base_set(j))
                        elems.push_back(detail::decode_power_index(v, j, base.vertex_count()));
                    return elems;
                };
                for (int b = 0; b < total / best_j; ++b) blocks.push_back(block_of(best_j));
                if (total % best_j) blocks.push_back(block_of(total % best_j));

                std::vector<long long> set;
                std::vector<std::size_t> cursor(blocks.size(), 0);
                const Int full_size = best_value;
                const bool trim = full_size > 100000;
                for (;;) {
                    long long idx = 0;
                    for (std::size_t b = 0; b < blocks.size(); ++b)
                        for (int d : blocks[b][cursor[b]]) idx = idx * base.vertex_count() + d;
                    set.push_back(idx);
                    if (trim && Int(set.size()) >= needed) break;
                    bool rolled_over = false;
                    std::size_t b = blocks.size();
                    for (;;) {
                        if (b == 0) {
                            rolled_over = true;
                            break;
                        }
                        --b;
                        if (++cursor[b] < blocks[b].size()) break;
                        cursor[b] = 0;
                    }
                    if (rolled_over) break;
                }

                // Verify independence coordinate-wise over the base power.
                std::vector<std::vector<int>> digits;
                digits.reserve(set.size());
                for (long long idx : set)
                    digits.push_back(detail::decode_power_index(idx, total, base.vertex_count()));
                for (std::size_t i = 0; i < set.size(); ++i)
                    for (std::size_t jj = i + 1; jj < set.size(); ++jj) {
                        if (set[i] == set[jj] || detail::power_adjacent(base, digits[i], digits[jj]))
                            throw std::logic_error("power_relation_probe: product set failed verification");
                    }
                std::sort(set.begin(), set.end());
                return ProbeResult{k, std::move(set), std::nullopt};
            }

            // No certificate; refute k exactly or fail loudly.
            if (needed > target_size) continue; // impossible outright
            if (target_size > opts.materialize_cap)
                throw cap_exceeded("power_relation_probe: cannot decide k=" + std::to_string(k) +
                                   " (target power exceeds materialization cap)");
            Graph tp = power(g, t);
            alpha_options ao;
            ao.node_budget = opts.node_budget;
            ao.stop_at_size = static_cast<int>(needed);
            auto s = max_independent_set(tp, ao);
            if (Int(s.size()) >= needed) {
                std::vector<long long> set(s.begin(), s.end());
                return ProbeResult{k, std::move(set), std::nullopt};
            }
            // exact: no independent set of the needed size exists at this k
        }
        return std::nullopt;
    }

    for (int k = 0; k <= k_max; ++k) {
        const int t = n + k;
        const Int src_size = pow_int(m, static_cast<unsigned>(n));
        const Int dst_size = pow_int(Int(g.vertex_count()), static_cast<unsigned>(t));
        if (src_size > opts.materialize_cap || dst_size > opts.materialize_cap)
            throw cap_exceeded("power_relation_probe: powers exceed materialization cap");
        Graph hp = power(h, n);
        Graph gp = power(g, t);
        search_options so;
        so.node_budget = opts.node_budget;
        auto map = find_cohomomorphism(hp, gp, so);
        if (map) return ProbeResult{k, {}, std::move(*map)};
    }
    return std::nullopt;
}

} // namespace cohomord
