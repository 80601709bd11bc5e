#include "oracles.hpp"

#include "primerep/constant.hpp"
#include "primerep/errors.hpp"

#include <doctest.h>

using namespace primerep;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

ExponentsPtr constant(const char* c) {
    return std::make_shared<const ExponentSequence>(ExponentSequence::constant(R(c)));
}

PrimeChain chain_of(ExponentsPtr e, std::initializer_list<const char*> elems) {
    std::vector<BigInt> v;
    for (auto x : elems) v.emplace_back(x);
    return PrimeChain(std::move(e), v);
}

mpq_class q(const Dyadic& d) { return d.to_rational().value(); }

} // namespace

TEST_CASE("bracket for the seed-only chain") {
    auto b = bracket_for_chain(chain_of(constant("3"), {"2"}));
    CHECK(b.lo.to_long_double() <= 1.2599210498948731L);
    CHECK(b.hi.to_long_double() >= 1.4422495703074083L);
    CHECK(b.width().to_long_double() < 0.25L);
    auto li = level_interval(chain_of(constant("3"), {"2"}));
    CHECK(li.inner.lo.to_long_double() >= 1.2599210498948731L);
    CHECK(li.inner.hi.to_long_double() <= 1.4422495703074083L);

    auto one = std::make_shared<const ExponentSequence>(ExponentSequence({}, R("1"), R("0"), R("1")));
    auto e = bracket_for_chain(chain_of(one, {"3"}));
    CHECK(e.lo == Dyadic::from_integer(BigInt(3)));
    CHECK(e.hi == Dyadic::from_integer(BigInt(4)));
    CHECK(e.closed_lo);
    CHECK_FALSE(e.closed_hi);
}

TEST_CASE("Mills chain bracket and digits") {
    auto chain = chain_of(constant("3"), {"2", "11", "1361", "2521008887"});
    auto b = bracket_for_chain(chain);
    CHECK(b.width().to_long_double() < 1e-9L);
    // Mills' constant 1.30637788386308069...
    CHECK(b.lo.to_long_double() <= 1.3063778838630807L);
    CHECK(b.hi.to_long_double() >= 1.3063778838630807L);

    std::string d = digits(chain, 9);
    CHECK(d == "1.30637788");

    // Independent oracle: endpoints of {x : floor(x^81) = 2521008887} by rational bisection.
    auto lo = oracle::bisect_root(BigInt("2521008887"), R("81"), 60);
    auto hi = oracle::bisect_root(BigInt("2521008888"), R("81"), 60);
    CHECK(oracle::decimal_prefix(lo.hi, 9) == d);
    CHECK(oracle::decimal_prefix(hi.lo, 9) == d);
    CHECK(b.lo.to_rational().value() <= lo.hi);
    CHECK(b.hi.to_rational().value() >= hi.lo);

    std::size_t best = max_certified_digits(chain, 40);
    CHECK(best >= 9);
    CHECK_NOTHROW(digits(chain, best));
    CHECK_THROWS_AS(digits(chain, best + 1), NeedMoreDepth);
    // The oracle agrees on where certification stops.
    CHECK(oracle::decimal_prefix(lo.hi, best) == oracle::decimal_prefix(hi.lo, best));
    CHECK(oracle::decimal_prefix(lo.lo, best + 1) != oracle::decimal_prefix(hi.hi, best + 1));
}

TEST_CASE("digits examples") {
    auto seed_only = chain_of(constant("3"), {"2"});
    CHECK(digits(seed_only, 1) == "1");
    try {
        (void)digits(seed_only, 12);
        FAIL("expected NeedMoreDepth");
    } catch (const NeedMoreDepth& e) {
        CHECK(e.requested() == 12);
        CHECK(e.max_supported() == 1);
    }
    auto one = std::make_shared<const ExponentSequence>(ExponentSequence({}, R("1"), R("0"), R("1")));
    CHECK(digits(chain_of(one, {"3"}), 1) == "3");
    // Integer part longer than n: truncated, padded with zeros to keep the magnitude.
    CHECK(digits(chain_of(one, {"1009"}), 3) == "1000");
    CHECK(digits(chain_of(one, {"1009"}), 4) == "1009");
    CHECK_THROWS_AS(digits(chain_of(one, {"1009"}), 5), NeedMoreDepth);
}

TEST_CASE("verify_representation examples") {
    auto ok = verify_representation(chain_of(constant("3"), {"2", "11", "1361"}));
    CHECK(ok.passed());
    CHECK(ok.levels.size() == 3);
    CHECK_FALSE(ok.first_failure());

    auto bad = verify_representation(chain_of(constant("3"), {"2", "12"}));
    CHECK_FALSE(bad.passed());
    CHECK(bad.first_failure() == 2u);
    CHECK(bad.levels[1].status == PrimeStatus::composite);

    auto nest = verify_representation(chain_of(constant("3"), {"2", "29"}));
    CHECK_FALSE(nest.passed());
    CHECK(nest.first_failure() == 2u);
    CHECK_FALSE(nest.levels[1].nested);
    CHECK(nest.levels[1].status == PrimeStatus::prime);
}

TEST_CASE("property: level intervals nest and round-trip") {
    oracle::Rng rng(31);
    auto seeds = oracle::primes_between(2, 10000);
    const std::vector<const char*> exps{"2", "5/2", "3"};
    for (int trial = 0; trial < 60; ++trial) {
        auto e = constant(rng.pick(exps));
        PrimeChain chain(e, {rng.pick(seeds)});
        std::size_t depth = rng.uniform(0, 2);
        for (std::size_t s = 0; s < depth; ++s) {
            // A random admissible prime: the first one after a random offset into the interval.
            auto iv = admissible_interval(chain.last(), chain.next_exponent());
            BigInt width = iv.hi - iv.lo;
            BigInt offset = width * BigInt(static_cast<unsigned long>(rng.uniform(0, 1000))) / 1000;
            auto p = first_prime_in_range(iv.lo + offset, iv.hi);
            if (!p) p = first_prime_in_range(iv.lo, iv.hi);
            REQUIRE(p);
            chain = chain.extended(*p);
        }
        CAPTURE(chain.last());
        std::optional<LevelInterval> prev;
        for (std::size_t k = 1; k <= chain.length(); ++k) {
            PrimeChain prefix(e, std::vector<BigInt>(chain.elements.begin(), chain.elements.begin() + static_cast<long>(k)));
            LevelInterval li = level_interval(prefix);
            CHECK(li.outer.contains(li.inner));
            CHECK(li.inner.valid());
            if (prev) CHECK(prev->outer.contains(li.inner));
            // Inner-bracket points satisfy floor(x^C_j) = a_j at every level j <= k.
            for (int i = 0; i < 4; ++i) {
                mpq_class t(static_cast<unsigned long>(rng.uniform(0, 1000)), 1000UL);
                mpq_class x = q(li.inner.lo) + t * (q(li.inner.hi) - q(li.inner.lo));
                x.canonicalize();
                Rational xr(BigInt(x.get_num()), BigInt(x.get_den()));
                for (std::size_t j = 1; j <= k; ++j) {
                    CHECK(pow_floor(xr, e->C(j)) == chain.elements[j - 1]);
                }
            }
            prev = li;
        }
        CHECK(verify_representation(chain).passed());
    }
}

TEST_CASE("property: requested width is honoured") {
    auto chain = chain_of(constant("2"), {"5", "29"});
    for (long bits : {4L, 20L, 60L, 200L}) {
        auto li = level_interval(chain, Dyadic::pow2_neg(bits));
        CHECK(li.precision_bits >= bits);
        CHECK((li.outer.width() - li.inner.width()) <= Dyadic::pow2_neg(bits));
    }
}
