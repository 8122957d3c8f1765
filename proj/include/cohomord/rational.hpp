#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cohomord {

// Arbitrary-precision integers and rationals.  Rational is always kept in
// canonical form (lowest terms, positive denominator) by the backing type,
// and every comparison is exact.  No floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return numerator(q); }
inline Int den(const Rational& q) { return denominator(q); }

// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

// Accepts "p", "p/q", optional leading minus on the numerator.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](std::string_view t) {
        if (!t.empty() && t.front() == '-') t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rational(Int(std::string(text)));
        }
        std::string_view ns = text.substr(0, slash);
        std::string_view ds = text.substr(slash + 1);
        if (!is_int(ns) || !is_int(ds)) return std::nullopt;
        Int n{std::string(ns)};
        Int d{std::string(ds)};
        if (d == 0) return std::nullopt;
        return Rational(n, d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Rational parse_rational(std::string_view text) {
    auto q = try_parse_rational(text);
    if (!q) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    return *q;
}

// Smallest integer >= n/d.
inline Int ceil_div(const Int& n, const Int& d) {
    if (d == 0) throw std::invalid_argument("ceil_div: zero denominator");
    Int q = n / d, r = n % d;
    if (r != 0 && ((n > 0) == (d > 0))) ++q;
    return q;
}

// Smallest integer c with c >= q.
inline Int ceil_rational(const Rational& q) { return ceil_div(numerator(q), denominator(q)); }

inline Int pow_int(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline Rational pow_rational(const Rational& base, unsigned exp) {
    return Rational(pow_int(numerator(base), exp), pow_int(denominator(base), exp));
}

} // namespace cohomord
