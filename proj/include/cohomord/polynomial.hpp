#pragma once

#include "cohomord/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohomord {

// Exact polynomial over the rationals, constant term first.  Kept canonical:
// no trailing zero coefficients, so the zero polynomial has no coefficients
// and degree -1.
struct RationalPolynomial {
    std::vector<Rational> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }

    Rational coefficient(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : Rational(0); }

    bool operator==(const RationalPolynomial&) const = default;
};

inline RationalPolynomial make_polynomial(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return RationalPolynomial{std::move(coeffs)};
}

inline RationalPolynomial operator+(const RationalPolynomial& p, const RationalPolynomial& q) {
    std::vector<Rational> coeffs(std::max(p.coeffs.size(), q.coeffs.size()), Rational(0));
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) coeffs[i] += p.coeffs[i];
    for (std::size_t i = 0; i < q.coeffs.size(); ++i) coeffs[i] += q.coeffs[i];
    return make_polynomial(std::move(coeffs));
}

inline RationalPolynomial operator*(const RationalPolynomial& p, const RationalPolynomial& q) {
    if (p.coeffs.empty() || q.coeffs.empty()) return {};
    std::vector<Rational> coeffs(p.coeffs.size() + q.coeffs.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
    return make_polynomial(std::move(coeffs));
}

inline RationalPolynomial operator*(const Rational& c, const RationalPolynomial& p) {
    std::vector<Rational> coeffs;
    coeffs.reserve(p.coeffs.size());
    for (const Rational& a : p.coeffs) coeffs.push_back(c * a);
    return make_polynomial(std::move(coeffs));
}

// Deterministic total order for deduplication: by degree, then by
// coefficients from the constant term up.
inline bool polynomial_less(const RationalPolynomial& p, const RationalPolynomial& q) {
    if (p.coeffs.size() != q.coeffs.size()) return p.coeffs.size() < q.coeffs.size();
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i] != q.coeffs[i]) return p.coeffs[i] < q.coeffs[i];
    }
    return false;
}

// Lagrange interpolation through the given (x, y) pairs; exact.
inline RationalPolynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("interpolate: duplicate x value " +
                                            to_string(points[i].first));
    RationalPolynomial acc;
    for (std::size_t i = 0; i < n; ++i) {
        RationalPolynomial basis = make_polynomial({Rational(1)});
        Rational denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            basis = basis * make_polynomial({-points[j].first, Rational(1)});
            denom *= points[i].first - points[j].first;
        }
        acc = acc + (points[i].second / denom) * basis;
    }
    return acc;
}

inline std::string to_string(const RationalPolynomial& p) {
    if (p.coeffs.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (!out.empty()) out += " + ";
        out += to_string(p.coeffs[i]);
        if (i == 1) out += "*x";
        if (i > 1) out += "*x^" + std::to_string(i);
    }
    return out;
}

} // namespace cohomord
