#pragma once

/// @file rational.hpp
/// @brief Arbitrary-precision integers and exact rationals.
///
/// BigInt is GMP's mpz_class. Rational wraps mpq_class and keeps it canonical
/// (gcd(num, den) = 1, den > 0) at all times, so equality is structural.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace primerep {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const BigInt& value) : q_(value) {}
    Rational(const BigInt& num, const BigInt& den);

    /// Parses "n", "n/d" or a finite decimal such as "2.5" or "-0.01" (converted exactly).
    static Rational parse(std::string_view text);

    const BigInt& num() const { return q_.get_num(); }
    const BigInt& den() const { return q_.get_den(); }
    const mpq_class& value() const { return q_; }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    std::string str() const;
    long double to_long_double() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return cmp(a.q_, b.q_) <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    mpq_class q_{0};
};

/// Natural logarithm of a positive integer, accurate to long double precision.
long double log_of(const BigInt& n);

/// Nearest-ish long double to n (top 64 bits are kept); saturates to infinity.
long double to_long_double(const BigInt& n);

/// Exact base^exp for a machine-size exponent.
BigInt pow_int(const BigInt& base, unsigned long exp);

/// Exponent value as unsigned long, throwing InvalidArgument when it does not fit.
unsigned long to_exponent(const BigInt& e, const char* what);

BigInt parse_bigint(std::string_view text);

} // namespace primerep
