#pragma once

#include "cohomord/graph.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cohomord {

// graph6: compact printable encoding of a simple graph.  The vertex count
// is one byte (n + 63) for n <= 62, or '~' followed by three bytes holding
// n as an 18-bit big-endian value in 6-bit groups (each + 63).  The upper
// triangle bits x(0,1), x(0,2), x(1,2), x(0,3), ... follow, packed six per
// byte, most significant bit first, zero-padded, each byte + 63.
inline std::string encode_graph6(const Graph& g) {
    const int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, filled = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
    return out;
}

inline Graph decode_graph6(std::string_view text) {
    constexpr std::string_view header = ">>graph6<<";
    if (text.starts_with(header)) text.remove_prefix(header.size());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("graph6: empty input");

    auto need = [&](std::size_t k) {
        if (text.size() < k) throw std::invalid_argument("graph6: truncated input");
    };
    auto val = [&](std::size_t i) {
        const int c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte out of range");
        return c - 63;
    };

    long long n;
    std::size_t pos;
    if (text[0] != '~') {
        n = val(0);
        pos = 1;
    } else {
        need(2);
        if (text[1] == '~') throw std::invalid_argument("graph6: vertex counts beyond 258047 unsupported");
        need(4);
        n = (static_cast<long long>(val(1)) << 12) | (val(2) << 6) | val(3);
        pos = 4;
    }
    if (n > Graph::hard_vertex_limit) throw cap_exceeded("graph6: vertex count exceeds hard limit");

    const long long bits = n * (n - 1) / 2;
    const long long bytes = (bits + 5) / 6;
    need(pos + static_cast<std::size_t>(bytes));
    if (text.size() != pos + static_cast<std::size_t>(bytes))
        throw std::invalid_argument("graph6: trailing bytes");

    Graph g(static_cast<int>(n));
    long long bit = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++bit) {
            const int byte = val(pos + static_cast<std::size_t>(bit / 6));
            if ((byte >> (5 - bit % 6)) & 1) g.add_edge(u, v);
        }
    // Padding bits must be zero.
    for (long long b = bits; b < bytes * 6; ++b) {
        const int byte = val(pos + static_cast<std::size_t>(b / 6));
        if ((byte >> (5 - b % 6)) & 1) throw std::invalid_argument("graph6: nonzero padding");
    }
    return g;
}

// JSON edge list: {"n": <int>, "edges": [[u, v], ...]}.
inline nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.vertex_count();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph json: expected {\"n\": ..., \"edges\": [...]}");
    const long long n = j.at("n").get<long long>();
    if (n < 0 || n > Graph::hard_vertex_limit) throw std::invalid_argument("graph json: bad vertex count");
    Graph g(static_cast<int>(n));
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph json: bad edge entry");
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return g;
}

} // namespace cohomord
