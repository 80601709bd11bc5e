#include "oracles.hpp"

#include "primerep/certified.hpp"
#include "primerep/errors.hpp"

#include <doctest.h>

using namespace primerep;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

// x^N compared with a^D for x = m / 2^s: the true root a^(D/N) is >= x iff this holds.
bool dyadic_root_le(const Dyadic& x, const BigInt& a, const Rational& C) {
    unsigned long N = C.num().get_ui(), D = C.den().get_ui();
    return oracle::ipow(x.mantissa, N) <= oracle::ipow(a, D) * oracle::ipow(BigInt(2), static_cast<unsigned long>(x.scale) * N);
}
bool dyadic_root_ge(const Dyadic& x, const BigInt& a, const Rational& C) {
    unsigned long N = C.num().get_ui(), D = C.den().get_ui();
    return oracle::ipow(x.mantissa, N) >= oracle::ipow(a, D) * oracle::ipow(BigInt(2), static_cast<unsigned long>(x.scale) * N);
}

} // namespace

TEST_CASE("Rational parsing and arithmetic") {
    CHECK(R("5/2") == Rational(5) / Rational(2));
    CHECK(R("10/4") == R("5/2"));
    CHECK(R("0.01") == Rational(1) / Rational(100));
    CHECK(R("-2.5") == R("-5/2"));
    CHECK(R("3").is_integer());
    CHECK(R("5/2").str() == "5/2");
    CHECK(R("1/3") < R("1/2"));
    CHECK_THROWS_AS(R("1/0"), InvalidArgument);
    CHECK_THROWS_AS(R("abc"), InvalidArgument);
    CHECK_THROWS_AS(R(""), InvalidArgument);
    CHECK(R("1/3").to_long_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(to_long_double(BigInt("123456789012345678901234567890")) == doctest::Approx(1.2345678901234568e29));
}

TEST_CASE("pow_floor examples") {
    CHECK(pow_floor(BigInt(2), R("3")) == 8);
    CHECK(pow_floor(BigInt(2), R("5/2")) == 5);
    CHECK(pow_floor(BigInt(4), R("1/2")) == 2);
    CHECK(pow_floor(BigInt(0), R("5/2")) == 0);
    CHECK(pow_floor(BigInt(32), R("1/5")) == 2);
    CHECK(pow_floor(BigInt(31), R("1/5")) == 1);
    CHECK_THROWS_AS(pow_floor(BigInt(-1), R("2")), InvalidArgument);
    CHECK_THROWS_AS(pow_floor(BigInt(2), R("0")), InvalidArgument);
}

TEST_CASE("pow_ceil examples") {
    CHECK(pow_ceil(BigInt(2), R("3")) == 8);
    CHECK(pow_ceil(BigInt(2), R("5/2")) == 6);
    CHECK(pow_ceil(BigInt(9), R("1/2")) == 3);
    CHECK(pow_ceil(BigInt(10), R("1/2")) == 4);
}

TEST_CASE("property: sandwich and floor/ceil relation") {
    oracle::Rng rng(3);
    const std::vector<const char*> exps{"2", "3", "5/2", "3/2", "7/3", "1/2", "4/3", "11/4", "1"};
    for (int trial = 0; trial < 2000; ++trial) {
        BigInt a(static_cast<unsigned long>(rng.uniform(0, trial < 1000 ? 1000 : 1000000000)));
        Rational c = R(rng.pick(exps));
        unsigned long n = c.num().get_ui(), d = c.den().get_ui();
        BigInt f = pow_floor(a, c);
        BigInt g = pow_ceil(a, c);
        BigInt an = oracle::ipow(a, n);
        CAPTURE(a);
        CAPTURE(c);
        CHECK(oracle::ipow(f, d) <= an);
        CHECK(an < oracle::ipow(f + 1, d));
        CHECK(f == oracle::floor_power(Rational(a), c));
        BigInt diff = g - f;
        CHECK((diff == 0 || diff == 1));
        CHECK((diff == 0) == pow_is_integer(a, c));
    }
}

TEST_CASE("pow_floor on rational bases") {
    CHECK(pow_floor(R("3/2"), R("2")) == 2);    // 9/4
    CHECK(pow_floor(R("1/2"), R("3")) == 0);
    CHECK(pow_floor(R("27/8"), R("1/3")) == 1); // 3/2
    CHECK(pow_floor(R("8"), R("1/3")) == 2);
    oracle::Rng rng(5);
    const std::vector<const char*> exps{"2", "3", "5/2", "9", "27/4"};
    for (int trial = 0; trial < 500; ++trial) {
        Rational q(BigInt(static_cast<unsigned long>(rng.uniform(1, 100000))),
                   BigInt(static_cast<unsigned long>(rng.uniform(1, 1000))));
        Rational c = R(rng.pick(exps));
        CAPTURE(q);
        CAPTURE(c);
        CHECK(pow_floor(q, c) == oracle::floor_power(q, c));
    }
}

TEST_CASE("floor_root") {
    bool exact = false;
    CHECK(floor_root(BigInt(27), 3, &exact) == 3);
    CHECK(exact);
    CHECK(floor_root(BigInt(26), 3, &exact) == 2);
    CHECK_FALSE(exact);
    CHECK(floor_root(BigInt(0), 5) == 0);
}

TEST_CASE("root_enclosure examples") {
    Bracket b = root_enclosure(BigInt(8), R("3"), Dyadic::pow2_neg(20));
    CHECK(b.is_exact());
    CHECK(b.lo == Dyadic::from_integer(BigInt(2)));

    Bracket c = root_enclosure(BigInt(3), R("1"), Dyadic::pow2_neg(5));
    CHECK(c.is_exact());
    CHECK(c.lo == Dyadic::from_integer(BigInt(3)));

    // 10^-6 is not dyadic; 2^-20 < 10^-6.
    Bracket d = root_enclosure(BigInt(2), R("3"), Dyadic::pow2_neg(20));
    CHECK(d.valid());
    CHECK(d.width().to_long_double() <= 1e-6L);
    CHECK(d.lo.to_long_double() <= 1.2599210498948732L);
    CHECK(d.hi.to_long_double() >= 1.2599210498948731L);
    auto ref = oracle::bisect_root(BigInt(2), R("3"), 40);
    CHECK(d.lo.to_rational().value() <= ref.hi);
    CHECK(d.hi.to_rational().value() >= ref.lo);
    CHECK(dyadic_root_le(d.lo, BigInt(2), R("3")));
    CHECK(dyadic_root_ge(d.hi, BigInt(2), R("3")));
}

TEST_CASE("property: enclosures contain the root and refine monotonically") {
    oracle::Rng rng(17);
    const std::vector<const char*> exps{"2", "3", "5/2", "9", "27", "81", "25/4", "1"};
    for (int trial = 0; trial < 400; ++trial) {
        BigInt a(static_cast<unsigned long>(rng.uniform(1, 10000000000ULL)));
        Rational C = R(rng.pick(exps));
        long bits = static_cast<long>(rng.uniform(0, 80));
        CAPTURE(a);
        CAPTURE(C);
        CAPTURE(bits);
        Bracket b = root_enclosure_bits(a, C, bits);
        CHECK(b.valid());
        CHECK(b.width() <= Dyadic::pow2_neg(bits));
        CHECK(dyadic_root_le(b.lo, a, C));
        CHECK(dyadic_root_ge(b.hi, a, C));
        Bracket finer = root_enclosure_bits(a, C, bits + static_cast<long>(rng.uniform(1, 40)));
        CHECK(b.contains(finer));
        CHECK(finer.width() <= b.width());
    }
}

TEST_CASE("compare_roots") {
    CHECK(compare_roots(BigInt(8), R("3"), BigInt(2), R("1")) == 0);
    CHECK(compare_roots(BigInt(9), R("3"), BigInt(2), R("1")) > 0);
    CHECK(compare_roots(BigInt(13), R("9"), BigInt(12), R("9")) > 0);
    CHECK(compare_roots(BigInt(2), R("1/2"), BigInt(5), R("1")) < 0);
}

TEST_CASE("bits_for_width") {
    CHECK(bits_for_width(Dyadic::pow2_neg(20)) == 20);
    CHECK(bits_for_width(Dyadic::from_integer(BigInt(1))) == 0);
    CHECK(bits_for_width(Dyadic::from_integer(BigInt(5))) == 0);
    CHECK(bits_for_width(Dyadic{BigInt(3), 5}) == 4);  // 3/32 >= 1/16
}

TEST_CASE("Dyadic decimal rendering") {
    CHECK(Dyadic{BigInt(5), 1}.decimal(3) == "2.500");
    CHECK(Dyadic{BigInt(-1), 2}.decimal(2) == "-0.25");
    CHECK(Dyadic::from_integer(BigInt(7)).decimal(0) == "7");
}
