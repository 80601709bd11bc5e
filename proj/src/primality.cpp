#include "primerep/primality.hpp"

#include "primerep/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>

namespace primerep {

namespace {

// Miller-Rabin with the first 13 primes as bases is exact below this bound (Sorenson-Webster psi_13).
const char* const kThresholdDigits = "3317044064679887385961981";

constexpr std::array<unsigned, 13> kDeterministicBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

constexpr std::uint32_t kSharedTableLimit = std::uint32_t{1} << 24;

std::vector<std::uint32_t> sieve_small(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

const std::vector<std::uint32_t>& shared_table() {
    static const std::vector<std::uint32_t> table = sieve_small(kSharedTableLimit);
    return table;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool mr_u64(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Modular halving of x (0 <= x < n, n odd).
void half_mod(BigInt& x, const BigInt& n) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    x >>= 1;
}

std::uint64_t width_of(const BigInt& lo, const BigInt& hi) {
    BigInt w = hi - lo + 1;
    if (!w.fits_ulong_p()) return ~std::uint64_t{0};
    return w.get_ui();
}

BigInt isqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Visits the primes of [lo, hi] in ascending order until `visit` returns false.
// Segments are sieved by base primes up to min(isqrt(hi), sieve_limit); when the
// cap is below isqrt(hi), survivors go through classify().
template <typename Visit>
void sieve_walk(const BigInt& lo_in, const BigInt& hi, const RangeOptions& opt, std::size_t first_segment,
                Visit&& visit) {
    BigInt lo = lo_in < 2 ? BigInt(2) : lo_in;
    if (lo > hi) return;

    BigInt root = isqrt(hi);
    bool complete = root <= opt.sieve_limit;
    std::uint32_t bound = complete ? static_cast<std::uint32_t>(root.get_ui())
                                   : std::min<std::uint32_t>(opt.sieve_limit, std::uint32_t{1} << 20);
    std::vector<std::uint32_t> local;
    const std::vector<std::uint32_t>* primes = nullptr;
    if (bound <= kSharedTableLimit) {
        primes = &shared_table();
    } else {
        local = sieve_small(bound);
        primes = &local;
    }
    auto end = std::upper_bound(primes->begin(), primes->end(), bound);

    std::size_t seg = std::max<std::size_t>(std::min(first_segment, opt.segment_bytes), 64);
    std::vector<std::uint8_t> flags;
    BigInt start = lo;
    BigInt candidate;
    while (start <= hi) {
        BigInt remaining = hi - start + 1;
        std::size_t len = remaining.fits_ulong_p() ? std::min<std::size_t>(seg, remaining.get_ui()) : seg;
        flags.assign(len, 1);
        bool small_start = start.fits_ulong_p() && start.get_ui() <= bound;
        std::uint64_t s64 = small_start ? start.get_ui() : 0;
        for (auto it = primes->begin(); it != end; ++it) {
            std::uint64_t p = *it;
            std::uint64_t first;
            if (small_start && s64 <= p) {
                first = p * p - s64;
            } else {
                std::uint64_t r = mpz_fdiv_ui(start.get_mpz_t(), p);
                first = r == 0 ? 0 : p - r;
            }
            for (std::uint64_t j = first; j < len; j += p) flags[j] = 0;
        }
        for (std::size_t i = 0; i < len; ++i) {
            if (!flags[i]) continue;
            candidate = start + i;
            if (!complete && candidate > bound && !is_prime(candidate, opt.primality)) continue;
            if (!visit(candidate)) return;
        }
        start += len;
        seg = std::min(seg * 2, opt.segment_bytes);
    }
}

template <typename Visit>
void scan_walk(const BigInt& lo_in, const BigInt& hi, const RangeOptions& opt, Visit&& visit) {
    static constexpr std::array<unsigned, 8> kWheel{1, 7, 11, 13, 17, 19, 23, 29};
    BigInt n = lo_in < 2 ? BigInt(2) : lo_in;
    for (unsigned small : {2u, 3u, 5u}) {
        if (n <= small && small <= hi) {
            if (!visit(BigInt(small))) return;
        }
    }
    if (n < 7) n = 7;
    while (n <= hi) {
        unsigned r = mpz_fdiv_ui(n.get_mpz_t(), 30);
        if (std::find(kWheel.begin(), kWheel.end(), r) != kWheel.end() && is_prime(n, opt.primality)) {
            if (!visit(n)) return;
        }
        ++n;
    }
}

template <typename Visit>
void walk_range(const BigInt& lo, const BigInt& hi, const RangeOptions& opt, Visit&& visit) {
    if (lo > hi) throw InvalidArgument("empty range: lo > hi");
    if (width_of(lo, hi) > opt.max_width) {
        if (!opt.allow_scan_fallback) {
            throw RangeTooLarge("range [" + lo.get_str() + ", " + hi.get_str() + "] is wider than the budget of "
                                + std::to_string(opt.max_width) + " integers");
        }
        scan_walk(lo, hi, opt, visit);
        return;
    }
    sieve_walk(lo, hi, opt, opt.segment_bytes, visit);
}

} // namespace

const char* to_string(PrimeStatus s) {
    switch (s) {
    case PrimeStatus::composite: return "composite";
    case PrimeStatus::prime: return "prime";
    case PrimeStatus::probable_prime: return "probable_prime";
    }
    return "?";
}

const BigInt& deterministic_threshold() {
    static const BigInt t(kThresholdDigits);
    return t;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!mr_u64(n, a)) return false;
    }
    return true;
}

bool miller_rabin_round(const BigInt& n, const BigInt& base) {
    BigInt nm1 = n - 1;
    BigInt d = nm1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    BigInt x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

bool strong_lucas_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n == 2) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;

    // Selfridge's method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    long D = 5;
    for (;;) {
        BigInt dz(D);
        int j = mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(dz) != n) return false;
        D = D > 0 ? -(D + 2) : -D + 2;
    }
    const BigInt Dz(D);
    const BigInt Q = BigInt(1 - D) / 4;

    BigInt d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;

    BigInt U = 1, V = 1, Qk, t, u2, v2;
    mpz_mod(Qk.get_mpz_t(), Q.get_mpz_t(), n.get_mpz_t());
    BigInt Qmod = Qk;
    for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
        // Doubling: U_2k = U_k V_k, V_2k = V_k^2 - 2 Q^k.
        U = U * V;
        mpz_mod(U.get_mpz_t(), U.get_mpz_t(), n.get_mpz_t());
        V = V * V - 2 * Qk;
        mpz_mod(V.get_mpz_t(), V.get_mpz_t(), n.get_mpz_t());
        Qk = Qk * Qk;
        mpz_mod(Qk.get_mpz_t(), Qk.get_mpz_t(), n.get_mpz_t());
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
            // Increment with P = 1: U_{k+1} = (U + V)/2, V_{k+1} = (D U + V)/2.
            u2 = U + V;
            mpz_mod(u2.get_mpz_t(), u2.get_mpz_t(), n.get_mpz_t());
            half_mod(u2, n);
            v2 = Dz * U + V;
            mpz_mod(v2.get_mpz_t(), v2.get_mpz_t(), n.get_mpz_t());
            half_mod(v2, n);
            U = u2;
            V = v2;
            Qk = Qk * Qmod;
            mpz_mod(Qk.get_mpz_t(), Qk.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = V * V - 2 * Qk;
        mpz_mod(V.get_mpz_t(), V.get_mpz_t(), n.get_mpz_t());
        if (V == 0) return true;
        Qk = Qk * Qk;
        mpz_mod(Qk.get_mpz_t(), Qk.get_mpz_t(), n.get_mpz_t());
    }
    return false;
}

PrimeStatus classify(const BigInt& n, const PrimalityConfig& cfg) {
    if (n < 2) return PrimeStatus::composite;
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui()) ? PrimeStatus::prime : PrimeStatus::composite;

    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u,
                       67u, 71u, 73u, 79u, 83u, 89u, 97u}) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return PrimeStatus::composite;
    }

    if (n < deterministic_threshold()) {
        for (unsigned a : kDeterministicBases) {
            if (!miller_rabin_round(n, BigInt(a))) return PrimeStatus::composite;
        }
        return PrimeStatus::prime;
    }

    if (!miller_rabin_round(n, BigInt(2))) return PrimeStatus::composite;
    if (!strong_lucas_probable_prime(n)) return PrimeStatus::composite;

    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(static_cast<unsigned long>(cfg.rng_seed));
    BigInt span = n - 4;
    for (unsigned i = 0; i < cfg.extra_rounds; ++i) {
        BigInt base = rng.get_z_range(span) + 2;
        if (!miller_rabin_round(n, base)) return PrimeStatus::composite;
    }
    return PrimeStatus::probable_prime;
}

RangeOptions RangeOptions::from_environment() {
    RangeOptions opt;
    if (const char* env = std::getenv("PRIMEREP_MAX_WIDTH"); env != nullptr && *env != '\0') {
        char* endp = nullptr;
        unsigned long long v = std::strtoull(env, &endp, 10);
        if (endp == env || *endp != '\0' || v == 0) {
            throw InvalidArgument(std::string("PRIMEREP_MAX_WIDTH is not a positive integer: ") + env);
        }
        opt.max_width = v;
    }
    return opt;
}

std::vector<std::uint32_t> small_primes_up_to(std::uint32_t limit) {
    if (limit <= kSharedTableLimit) {
        const auto& t = shared_table();
        return {t.begin(), std::upper_bound(t.begin(), t.end(), limit)};
    }
    return sieve_small(limit);
}

PrimeList primes_in_range(const BigInt& lo, const BigInt& hi, const RangeOptions& opt) {
    PrimeList out;
    walk_range(lo, hi, opt, [&](const BigInt& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::uint64_t count_primes_in_range(const BigInt& lo, const BigInt& hi, const RangeOptions& opt) {
    std::uint64_t count = 0;
    walk_range(lo, hi, opt, [&](const BigInt&) {
        ++count;
        return true;
    });
    return count;
}

PrimeList first_primes_in_range(const BigInt& lo, const BigInt& hi, std::size_t limit, const RangeOptions& opt) {
    if (lo > hi) throw InvalidArgument("empty range: lo > hi");
    PrimeList out;
    if (limit == 0) return out;
    sieve_walk(lo, hi, opt, 4096, [&](const BigInt& p) {
        out.push_back(p);
        return out.size() < limit;
    });
    return out;
}

std::optional<BigInt> first_prime_in_range(const BigInt& lo, const BigInt& hi, const RangeOptions& opt) {
    auto found = first_primes_in_range(lo, hi, 1, opt);
    if (found.empty()) return std::nullopt;
    return found.front();
}

} // namespace primerep
