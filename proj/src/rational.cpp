#include "primerep/rational.hpp"

#include "primerep/errors.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace primerep {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw InvalidArgument("division by zero rational");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw InvalidArgument("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) throw InvalidArgument("malformed decimal: " + std::string(text));
        digits.append(frac);
        if (digits == "-" || digits == "+") throw InvalidArgument("malformed decimal: " + std::string(text));
        return Rational(parse_bigint(digits), pow_int(BigInt(10), frac.size()));
    }
    return Rational(parse_bigint(text));
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

long double Rational::to_long_double() const {
    if (sign() == 0) return 0.0L;
    long nb = static_cast<long>(mpz_sizeinbase(num().get_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(den().get_mpz_t(), 2));
    // Quotient with ~66 significant bits, then rescale.
    long shift = 66 + db - nb;
    BigInt scaled = shift >= 0 ? BigInt((num() << shift) / den()) : BigInt(num() / (den() << -shift));
    return std::ldexp(primerep::to_long_double(scaled), static_cast<int>(-shift));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

long double to_long_double(const BigInt& n) {
    if (n == 0) return 0.0L;
    if (n < 0) return -to_long_double(BigInt(-n));
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (bits <= 64) {
        BigInt hi = n >> 32;
        BigInt lo = n - (hi << 32);
        return std::ldexp(static_cast<long double>(hi.get_ui()), 32) + static_cast<long double>(lo.get_ui());
    }
    if (bits > static_cast<std::size_t>(std::numeric_limits<long double>::max_exponent)) {
        return std::numeric_limits<long double>::infinity();
    }
    BigInt top = n >> (bits - 64);
    return std::ldexp(to_long_double(top), static_cast<int>(bits - 64));
}

long double log_of(const BigInt& n) {
    if (n <= 0) throw InvalidArgument("log of nonpositive integer");
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (bits <= 64) return std::log(to_long_double(n));
    BigInt top = n >> (bits - 64);
    return std::log(to_long_double(top)) + static_cast<long double>(bits - 64) * std::log(2.0L);
}

BigInt pow_int(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

unsigned long to_exponent(const BigInt& e, const char* what) {
    if (e < 0 || !e.fits_ulong_p()) throw InvalidArgument(std::string(what) + " does not fit a machine exponent");
    return e.get_ui();
}

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    BigInt r;
    if (s.empty() || r.set_str(s, 10) != 0) throw InvalidArgument("not an integer: " + std::string(text));
    return r;
}

} // namespace primerep
