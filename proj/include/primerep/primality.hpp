#pragma once

/// @file primality.hpp
/// @brief Primality decisions and prime enumeration over big-integer intervals.
///
/// Below 3317044064679887385961981 (> 3.3e24) Miller-Rabin with the first
/// thirteen prime bases is deterministic. Above it a Baillie-PSW test (strong
/// base-2 Miller-Rabin plus strong Lucas with Selfridge parameters) is followed
/// by extra Miller-Rabin rounds with bases drawn from a fixed seed, and the
/// result is reported as a probable prime.
///
/// Every function here is pure and safe to call from several threads; the
/// only shared state is a read-only base-prime table built once on first use.

#include "primerep/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace primerep {

enum class PrimeStatus { composite, prime, probable_prime };

const char* to_string(PrimeStatus s);

struct PrimalityConfig {
    /// Extra random-base Miller-Rabin rounds applied after BPSW above the threshold.
    unsigned extra_rounds = 8;
    std::uint64_t rng_seed = 0x6d696c6c73ULL;
};

/// Smallest integer for which a status of `prime` is no longer deterministic.
const BigInt& deterministic_threshold();

PrimeStatus classify(const BigInt& n, const PrimalityConfig& cfg = {});

inline bool is_prime(const BigInt& n, const PrimalityConfig& cfg = {}) {
    return classify(n, cfg) != PrimeStatus::composite;
}

bool is_prime_u64(std::uint64_t n);

/// Building blocks, exposed for testing.
bool miller_rabin_round(const BigInt& n, const BigInt& base);
bool strong_lucas_probable_prime(const BigInt& n);

/// Limits for interval enumeration.
struct RangeOptions {
    /// Widest interval (hi - lo + 1) that may be enumerated or counted.
    std::uint64_t max_width = std::uint64_t{1} << 32;
    /// Sieve segment length in bytes (one byte per integer).
    std::size_t segment_bytes = std::size_t{1} << 18;
    /// Largest base prime used for sieving; survivors above its square are tested individually.
    std::uint32_t sieve_limit = std::uint32_t{1} << 24;
    /// When true, intervals wider than max_width are scanned candidate by candidate
    /// instead of raising RangeTooLarge.
    bool allow_scan_fallback = false;
    PrimalityConfig primality{};

    /// Defaults, with max_width overridden by PRIMEREP_MAX_WIDTH when set.
    static RangeOptions from_environment();
};

/// Ascending primes p with lo <= p <= hi.
using PrimeList = std::vector<BigInt>;

PrimeList primes_in_range(const BigInt& lo, const BigInt& hi, const RangeOptions& opt = {});

/// At most `limit` smallest primes in [lo, hi]; never subject to max_width.
PrimeList first_primes_in_range(const BigInt& lo, const BigInt& hi, std::size_t limit,
                                const RangeOptions& opt = {});

std::optional<BigInt> first_prime_in_range(const BigInt& lo, const BigInt& hi, const RangeOptions& opt = {});

std::uint64_t count_primes_in_range(const BigInt& lo, const BigInt& hi, const RangeOptions& opt = {});

/// Primes up to `limit` (inclusive) from the shared table or a fresh sieve.
std::vector<std::uint32_t> small_primes_up_to(std::uint32_t limit);

} // namespace primerep
