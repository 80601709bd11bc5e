#pragma once

/// @file certified.hpp
/// @brief Exact floor/ceil of rational powers and certified dyadic root enclosures.
///
/// Exponents are exact rationals c = n/d, so a^c = (a^n)^(1/d) and every floor,
/// ceiling and outward-rounded endpoint below reduces to an integer k-th root
/// (mpz_root), which is exact. Nothing here touches floating point.

#include "primerep/rational.hpp"

#include <compare>
#include <iosfwd>
#include <string>

namespace primerep {

/// mantissa * 2^-scale
struct Dyadic {
    BigInt mantissa = 0;
    long scale = 0;

    static Dyadic from_integer(const BigInt& v) { return {v, 0}; }
    /// 2^-bits
    static Dyadic pow2_neg(long bits) { return {BigInt(1), bits}; }
    /// Largest dyadic with the given scale not above q.
    static Dyadic floor_of(const Rational& q, long scale);

    Rational to_rational() const;
    long double to_long_double() const;
    std::string decimal(int digits) const;

    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) { return (a <=> b) == 0; }
};

Dyadic operator-(const Dyadic& a, const Dyadic& b);
Dyadic operator+(const Dyadic& a, const Dyadic& b);

/// Enclosure [lo, hi] of a real number or interval with dyadic endpoints.
struct Bracket {
    Dyadic lo;
    Dyadic hi;
    bool closed_lo = true;
    bool closed_hi = true;

    static Bracket exact(const BigInt& v) { return {Dyadic::from_integer(v), Dyadic::from_integer(v), true, true}; }

    bool is_exact() const { return lo == hi; }
    Dyadic width() const { return hi - lo; }
    bool contains(const Rational& q) const;
    bool contains(const Bracket& inner) const;
    bool valid() const;
};

std::ostream& operator<<(std::ostream& os, const Bracket& b);

/// floor(x^(1/k)) for x >= 0; `exact` reports whether the root is an integer.
BigInt floor_root(const BigInt& x, unsigned long k, bool* exact = nullptr);

/// floor(a^c) for a >= 0 and rational c > 0.
BigInt pow_floor(const BigInt& a, const Rational& c);
/// floor(q^c) for rational q >= 0 and rational c > 0.
BigInt pow_floor(const Rational& q, const Rational& c);
/// ceil(a^c) for a >= 0 and rational c > 0.
BigInt pow_ceil(const BigInt& a, const Rational& c);
/// True iff a^c is an integer.
bool pow_is_integer(const BigInt& a, const Rational& c);

/// Bracket around a^(1/C) whose width is at most 2^-bits (bits >= 0).
/// Exact roots come back as degenerate closed brackets.
Bracket root_enclosure_bits(const BigInt& a, const Rational& C, long bits);

/// Bracket around a^(1/C) with width at most max_width.
Bracket root_enclosure(const BigInt& a, const Rational& C, const Dyadic& max_width);

/// Sign of a^(1/C) - b^(1/D), decided in integer arithmetic.
int compare_roots(const BigInt& a, const Rational& C, const BigInt& b, const Rational& D);

/// Smallest s >= 0 with 2^-s <= w.
long bits_for_width(const Dyadic& w);

} // namespace primerep
