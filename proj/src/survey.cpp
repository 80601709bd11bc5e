#include "primerep/survey.hpp"

#include "primerep/certified.hpp"
#include "primerep/chain.hpp"
#include "primerep/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <ostream>
#include <thread>

namespace primerep {

namespace {

// Runs fn(i) for i < n on `workers` threads; results land at index i, so the
// merged output order does not depend on scheduling.
template <typename Fn>
void run_indexed(std::size_t n, unsigned workers, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (w == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < w; ++t) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

std::vector<SurveyRecord> gamma_survey(const std::vector<BigInt>& xs, const Rational& gamma, const SurveyOptions& opt) {
    if (gamma < Rational(1, 2) || gamma > Rational(1)) throw InvalidArgument("gamma must lie in [1/2, 1]");
    for (const auto& x : xs) {
        if (x < 2) throw InvalidArgument("survey anchors must be at least 2");
    }
    std::vector<SurveyRecord> out(xs.size());
    run_indexed(xs.size(), opt.workers, [&](std::size_t i) {
        const BigInt& x = xs[i];
        SurveyRecord& r = out[i];
        r.anchor = x;
        r.exponent_form = GammaForm{gamma};
        r.lo = x;
        r.hi = x + pow_floor(x, gamma);
        r.count = count_primes_in_range(r.lo, r.hi, opt.range);
        long double ln_x = log_of(x);
        long double scale = std::exp(gamma.to_long_double() * ln_x);
        r.density_ratio = static_cast<long double>(r.count) * ln_x / scale;
    });
    return out;
}

BigInt matomaki_upper(const BigInt& X, const Rational& c) {
    // (3/2)^(1/c) X = (3^d X^n / 2^d)^(1/n) for c = n/d.
    unsigned long n = to_exponent(c.num(), "exponent numerator");
    unsigned long d = to_exponent(c.den(), "exponent denominator");
    BigInt radicand = pow_int(BigInt(3), d) * pow_int(X, n);
    BigInt q;
    BigInt den = pow_int(BigInt(2), d);
    mpz_fdiv_q(q.get_mpz_t(), radicand.get_mpz_t(), den.get_mpz_t());
    return floor_root(q, n);
}

MatomakiCensus matomaki_fraction(const BigInt& X, const Rational& c, long double d_threshold,
                                 const SurveyOptions& opt) {
    if (X < 2) throw InvalidArgument("X must be at least 2");
    if (c < Rational(2)) throw InvalidArgument("c must be at least 2");
    if (!(d_threshold >= 0 && d_threshold < 1)) throw InvalidArgument("threshold must lie in [0, 1)");

    PrimeList anchors = primes_in_range(X, matomaki_upper(X, c), opt.range);
    if (anchors.empty()) throw EmptyCensus("no prime in [X, (3/2)^(1/c) X] for X = " + X.get_str());

    MatomakiCensus census;
    census.records.resize(anchors.size());
    std::vector<char> good(anchors.size(), 0);
    const long double cc = c.to_long_double();
    run_indexed(anchors.size(), opt.workers, [&](std::size_t i) {
        const BigInt& p = anchors[i];
        auto iv = counting_subinterval(p, c);
        SurveyRecord& r = census.records[i];
        r.anchor = p;
        r.exponent_form = PowerForm{c};
        r.lo = iv.lo;
        r.hi = iv.hi;
        r.count = count_primes_in_range(iv.lo, iv.hi, opt.range);
        long double ln_p = log_of(p);
        long double expected = std::exp((cc - 1.0L) * ln_p) / (cc * ln_p);
        r.density_ratio = static_cast<long double>(r.count) / expected;
        good[i] = static_cast<long double>(r.count) > d_threshold * expected ? 1 : 0;
    });
    census.total = anchors.size();
    for (char g : good) census.good += static_cast<std::uint64_t>(g);
    census.fraction = static_cast<long double>(census.good) / static_cast<long double>(census.total);
    return census;
}

void write_survey_csv(std::ostream& os, const std::vector<SurveyRecord>& records, bool header) {
    if (header) os << "anchor,lo,hi,count,density_ratio\n";
    auto flags = os.flags();
    auto prec = os.precision();
    os << std::setprecision(12);
    for (const auto& r : records) {
        os << r.anchor.get_str() << ',' << r.lo.get_str() << ',' << r.hi.get_str() << ',' << r.count << ','
           << static_cast<double>(r.density_ratio) << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

} // namespace primerep
