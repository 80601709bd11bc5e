#include "primerep/constant.hpp"

#include "primerep/errors.hpp"

#include <algorithm>
#include <cmath>

namespace primerep {

namespace {

// Estimated -log2 of the true level-interval width, (1/C) a^(1/C - 1).
long estimated_width_bits(const BigInt& a, const Rational& C) {
    long double c = C.to_long_double();
    long double log2a = log_of(a) / std::log(2.0L);
    long double log2w = -std::log2(c) + (1.0L / c - 1.0L) * log2a;
    return static_cast<long>(std::ceil(-log2w));
}

// floor(A * 10^t) and whether every A in [a^(1/C), (a+1)^(1/C)) shares it.
bool decimal_prefix(const BigInt& a, const Rational& C, long t, BigInt& prefix) {
    unsigned long N = to_exponent(C.num(), "exponent numerator");
    unsigned long D = to_exponent(C.den(), "exponent denominator");
    BigInt lo = pow_int(a, D);
    BigInt hi = pow_int(BigInt(a + 1), D);
    BigInt scale = pow_int(BigInt(10), static_cast<unsigned long>(std::labs(t)) * N);
    if (t >= 0) {
        prefix = floor_root(lo * scale, N);
        return hi * scale <= pow_int(BigInt(prefix + 1), N);
    }
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), lo.get_mpz_t(), scale.get_mpz_t());
    prefix = floor_root(q, N);
    return hi <= pow_int(BigInt(prefix + 1), N) * scale;
}

} // namespace

LevelInterval level_interval(const PrimeChain& chain, const std::optional<Dyadic>& target_width) {
    const BigInt& a = chain.last();
    Rational C = chain.exponents->C(chain.length());
    long bits = std::max(0L, estimated_width_bits(a, C) + 4);
    if (target_width) bits = std::max(bits, bits_for_width(*target_width) + 1);

    for (;;) {
        Bracket lo = root_enclosure_bits(a, C, bits);
        Bracket hi = root_enclosure_bits(BigInt(a + 1), C, bits);
        LevelInterval out;
        out.precision_bits = bits;
        out.outer = Bracket{lo.lo, hi.hi, true, !hi.is_exact()};
        out.inner = Bracket{lo.hi, hi.lo, true, !hi.is_exact()};
        Dyadic inner_width = out.inner.hi - out.inner.lo;
        // Slack per endpoint is 2^-bits; require 8 * slack < inner width (<= true width).
        Dyadic eight_slack{BigInt(8), bits};
        bool exact_ends = lo.is_exact() && hi.is_exact();
        if (exact_ends || eight_slack < inner_width) return out;
        bits += 16;
    }
}

Bracket bracket_for_chain(const PrimeChain& chain, const std::optional<Dyadic>& target_width) {
    return level_interval(chain, target_width).outer;
}

std::string digits(const PrimeChain& chain, std::size_t n) {
    if (n == 0) throw InvalidArgument("digit count must be positive");
    const BigInt& a = chain.last();
    Rational C = chain.exponents->C(chain.length());
    unsigned long N = to_exponent(C.num(), "exponent numerator");
    unsigned long D = to_exponent(C.den(), "exponent denominator");
    std::string int_part = floor_root(pow_int(a, D), N).get_str();
    long t = static_cast<long>(n) - static_cast<long>(int_part.size());

    BigInt prefix;
    if (!decimal_prefix(a, C, t, prefix)) throw NeedMoreDepth(n, max_certified_digits(chain, n));

    std::string s = prefix.get_str();
    if (t > 0) {
        s.insert(int_part.size(), ".");
    } else if (t < 0) {
        s.append(static_cast<std::size_t>(-t), '0');
    }
    return s;
}

std::size_t max_certified_digits(const PrimeChain& chain, std::size_t limit) {
    const BigInt& a = chain.last();
    Rational C = chain.exponents->C(chain.length());
    unsigned long N = to_exponent(C.num(), "exponent numerator");
    unsigned long D = to_exponent(C.den(), "exponent denominator");
    long int_digits = static_cast<long>(floor_root(pow_int(a, D), N).get_str().size());
    // Determined digits are monotone in n, so the first failure ends the search.
    std::size_t best = 0;
    BigInt prefix;
    for (std::size_t n = 1; n <= limit; ++n) {
        if (!decimal_prefix(a, C, static_cast<long>(n) - int_digits, prefix)) break;
        best = n;
    }
    return best;
}

bool VerificationReport::passed() const {
    return std::all_of(levels.begin(), levels.end(), [](const LevelCheck& l) { return l.pass; });
}

std::optional<std::size_t> VerificationReport::first_failure() const {
    for (const auto& l : levels) {
        if (!l.pass) return l.level;
    }
    return std::nullopt;
}

VerificationReport verify_representation(const PrimeChain& chain, const PrimalityConfig& cfg) {
    VerificationReport report;
    for (std::size_t j = 1; j <= chain.length(); ++j) {
        LevelCheck check;
        check.level = j;
        check.value = chain.elements[j - 1];
        check.status = classify(check.value, cfg);
        if (j >= 2) {
            auto iv = admissible_interval(chain.elements[j - 2], chain.exponents->c(j));
            check.nested = iv.lo <= check.value && check.value <= iv.hi;
            if (!check.nested) {
                check.detail = check.value.get_str() + " outside [" + iv.lo.get_str() + ", " + iv.hi.get_str() + "]";
            }
        }
        if (check.status == PrimeStatus::composite) {
            check.detail += (check.detail.empty() ? "" : "; ") + check.value.get_str() + " is not prime";
        }
        check.pass = check.nested && check.status != PrimeStatus::composite;
        report.levels.push_back(std::move(check));
    }
    return report;
}

} // namespace primerep
