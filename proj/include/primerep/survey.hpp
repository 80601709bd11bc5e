#pragma once

/// @file survey.hpp
/// @brief Short-interval prime counts: measurements, not theorem checks.

#include "primerep/primality.hpp"
#include "primerep/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

namespace primerep {

struct GammaForm {
    Rational gamma;
};
struct PowerForm {
    Rational c;
};

struct SurveyRecord {
    BigInt anchor;
    std::variant<GammaForm, PowerForm> exponent_form;
    BigInt lo;
    BigInt hi;
    std::uint64_t count = 0;
    /// count * ln(anchor scale) / interval-length scale
    long double density_ratio = 0;
};

struct SurveyOptions {
    unsigned workers = 1;
    RangeOptions range{};
};

/// For each x: primes in [x, x + floor(x^gamma)], ratio count * ln x / x^gamma.
std::vector<SurveyRecord> gamma_survey(const std::vector<BigInt>& xs, const Rational& gamma,
                                       const SurveyOptions& opt = {});

struct MatomakiCensus {
    std::uint64_t total = 0;
    std::uint64_t good = 0;
    long double fraction = 0;
    /// One record per prime p in [X, (3/2)^(1/c) X], window [p^c, p^c + p^(c-1)],
    /// ratio count * c ln p / p^(c-1).
    std::vector<SurveyRecord> records;
};

/// Fraction of primes p in [X, (3/2)^(1/c) X] whose window holds more than
/// d * p^(c-1) / (c ln p) primes. Throws EmptyCensus when no p qualifies.
MatomakiCensus matomaki_fraction(const BigInt& X, const Rational& c, long double d_threshold,
                                 const SurveyOptions& opt = {});

/// floor((3/2)^(1/c) X), exactly.
BigInt matomaki_upper(const BigInt& X, const Rational& c);

/// CSV: anchor,lo,hi,count,density_ratio
void write_survey_csv(std::ostream& os, const std::vector<SurveyRecord>& records, bool header = true);

} // namespace primerep
