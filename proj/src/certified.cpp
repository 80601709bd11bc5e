#include "primerep/certified.hpp"

#include "primerep/errors.hpp"

#include <cmath>
#include <ostream>

namespace primerep {

namespace {

void require_positive_exponent(const Rational& c) {
    if (c.sign() <= 0) throw InvalidArgument("exponent must be positive, got " + c.str());
}

// Both mantissas brought to the larger scale.
std::pair<BigInt, BigInt> aligned(const Dyadic& a, const Dyadic& b, long& scale) {
    scale = std::max(a.scale, b.scale);
    BigInt x = a.mantissa << static_cast<mp_bitcnt_t>(scale - a.scale);
    BigInt y = b.mantissa << static_cast<mp_bitcnt_t>(scale - b.scale);
    return {x, y};
}

} // namespace

Dyadic Dyadic::floor_of(const Rational& q, long scale) {
    BigInt scaled;
    if (scale >= 0) {
        BigInt n = q.num() << static_cast<mp_bitcnt_t>(scale);
        mpz_fdiv_q(scaled.get_mpz_t(), n.get_mpz_t(), q.den().get_mpz_t());
    } else {
        BigInt d = q.den() << static_cast<mp_bitcnt_t>(-scale);
        mpz_fdiv_q(scaled.get_mpz_t(), q.num().get_mpz_t(), d.get_mpz_t());
    }
    return {scaled, scale};
}

Rational Dyadic::to_rational() const {
    if (scale >= 0) return Rational(mantissa, BigInt(1) << static_cast<mp_bitcnt_t>(scale));
    return Rational(BigInt(mantissa << static_cast<mp_bitcnt_t>(-scale)));
}

long double Dyadic::to_long_double() const {
    return std::ldexp(primerep::to_long_double(mantissa), static_cast<int>(-scale));
}

std::string Dyadic::decimal(int digits) const {
    Rational r = to_rational();
    BigInt scaled = r.num() * pow_int(BigInt(10), static_cast<unsigned long>(digits));
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), r.den().get_mpz_t());
    bool neg = q < 0;
    std::string s = BigInt(abs(q)).get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return neg ? "-" + s : s;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    long scale = 0;
    auto [x, y] = aligned(a, b, scale);
    return cmp(x, y) <=> 0;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    long scale = 0;
    auto [x, y] = aligned(a, b, scale);
    return {BigInt(x - y), scale};
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    long scale = 0;
    auto [x, y] = aligned(a, b, scale);
    return {BigInt(x + y), scale};
}

bool Bracket::contains(const Rational& q) const {
    Rational l = lo.to_rational();
    Rational h = hi.to_rational();
    bool above = closed_lo ? l <= q : l < q;
    bool below = closed_hi ? q <= h : q < h;
    return above && below;
}

bool Bracket::contains(const Bracket& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
}

bool Bracket::valid() const {
    auto c = lo <=> hi;
    if (c < 0) return true;
    return c == 0 && closed_lo && closed_hi;
}

std::ostream& operator<<(std::ostream& os, const Bracket& b) {
    return os << (b.closed_lo ? '[' : '(') << b.lo.decimal(20) << ", " << b.hi.decimal(20)
              << (b.closed_hi ? ']' : ')');
}

BigInt floor_root(const BigInt& x, unsigned long k, bool* exact) {
    if (x < 0) throw InvalidArgument("root of a negative integer");
    if (k == 0) throw InvalidArgument("zeroth root");
    BigInt r;
    int is_exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    if (exact != nullptr) *exact = is_exact != 0;
    return r;
}

BigInt pow_floor(const BigInt& a, const Rational& c) {
    require_positive_exponent(c);
    if (a < 0) throw InvalidArgument("pow_floor of a negative base");
    unsigned long n = to_exponent(c.num(), "exponent numerator");
    unsigned long d = to_exponent(c.den(), "exponent denominator");
    return floor_root(pow_int(a, n), d);
}

BigInt pow_floor(const Rational& q, const Rational& c) {
    require_positive_exponent(c);
    if (q.sign() < 0) throw InvalidArgument("pow_floor of a negative base");
    unsigned long n = to_exponent(c.num(), "exponent numerator");
    unsigned long d = to_exponent(c.den(), "exponent denominator");
    // floor((u^n / v^n)^(1/d)) = floor(floor(u^n / v^n)^(1/d)).
    BigInt un = pow_int(q.num(), n);
    BigInt vn = pow_int(q.den(), n);
    BigInt quotient;
    mpz_fdiv_q(quotient.get_mpz_t(), un.get_mpz_t(), vn.get_mpz_t());
    return floor_root(quotient, d);
}

bool pow_is_integer(const BigInt& a, const Rational& c) {
    require_positive_exponent(c);
    unsigned long n = to_exponent(c.num(), "exponent numerator");
    unsigned long d = to_exponent(c.den(), "exponent denominator");
    bool exact = false;
    floor_root(pow_int(a, n), d, &exact);
    return exact;
}

BigInt pow_ceil(const BigInt& a, const Rational& c) {
    require_positive_exponent(c);
    if (a < 0) throw InvalidArgument("pow_ceil of a negative base");
    unsigned long n = to_exponent(c.num(), "exponent numerator");
    unsigned long d = to_exponent(c.den(), "exponent denominator");
    bool exact = false;
    BigInt r = floor_root(pow_int(a, n), d, &exact);
    return exact ? r : BigInt(r + 1);
}

Bracket root_enclosure_bits(const BigInt& a, const Rational& C, long bits) {
    require_positive_exponent(C);
    if (a < 1) throw InvalidArgument("root_enclosure needs a >= 1");
    if (bits < 0) bits = 0;
    // a^(1/C) = (a^D)^(1/N) for C = N/D.
    unsigned long N = to_exponent(C.num(), "exponent numerator");
    unsigned long D = to_exponent(C.den(), "exponent denominator");
    BigInt aD = pow_int(a, D);
    bool exact = false;
    BigInt r = floor_root(aD, N, &exact);
    if (exact) return Bracket::exact(r);
    BigInt m = floor_root(aD << static_cast<mp_bitcnt_t>(bits * static_cast<long>(N)), N);
    return {Dyadic{m, bits}, Dyadic{BigInt(m + 1), bits}, true, true};
}

long bits_for_width(const Dyadic& w) {
    if (w.mantissa <= 0) throw InvalidArgument("width must be positive");
    long top = static_cast<long>(mpz_sizeinbase(w.mantissa.get_mpz_t(), 2)) - 1;
    return std::max(0L, w.scale - top);
}

Bracket root_enclosure(const BigInt& a, const Rational& C, const Dyadic& max_width) {
    return root_enclosure_bits(a, C, bits_for_width(max_width));
}

int compare_roots(const BigInt& a, const Rational& C, const BigInt& b, const Rational& D) {
    require_positive_exponent(C);
    require_positive_exponent(D);
    // a^(Cd/Cn) vs b^(Dd/Dn): raise both sides to Cn*Dn.
    unsigned long cn = to_exponent(C.num(), "exponent numerator");
    unsigned long cd = to_exponent(C.den(), "exponent denominator");
    unsigned long dn = to_exponent(D.num(), "exponent numerator");
    unsigned long dd = to_exponent(D.den(), "exponent denominator");
    BigInt lhs = pow_int(a, cd * dn);
    BigInt rhs = pow_int(b, dd * cn);
    return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
}

} // namespace primerep
