#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace qtoric {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p/q", "p", or a decimal string like "-1.4142" into an exact
// rational. Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

// Canonical form "p" or "p/q" (q > 1), matching mpq_class::get_str.
std::string rational_to_string(const Rational& q);

// Closed interval with exact rational endpoints, lo <= hi.
struct QInterval {
    Rational lo;
    Rational hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

    Rational width() const { return hi - lo; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    // Sign of every point in the interval; 0 means the interval straddles 0.
    int definite_sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }

    static QInterval point(const Rational& q) { return {q, q}; }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    QInterval operator*(const QInterval& o) const;
    QInterval pow(unsigned n) const;
    // Tightest interval contained in both; caller must know they overlap.
    QInterval intersect(const QInterval& o) const;
};

}  // namespace qtoric
