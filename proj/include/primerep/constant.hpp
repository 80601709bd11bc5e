#pragma once

/// @file constant.hpp
/// @brief Certified enclosures of the constant A selected by a prime chain.

#include "primerep/certified.hpp"
#include "primerep/chain.hpp"

#include <optional>
#include <string>
#include <vector>

namespace primerep {

/// The level interval [a_k^(1/C_k), (a_k + 1)^(1/C_k)) of a chain, enclosed from
/// both sides: inner is contained in the true interval, which is contained in outer.
struct LevelInterval {
    Bracket outer;
    Bracket inner;
    long precision_bits = 0;
};

/// Precision is raised until the per-endpoint slack is below 1/8 of the true
/// width and, when given, below half of target_width.
LevelInterval level_interval(const PrimeChain& chain, const std::optional<Dyadic>& target_width = std::nullopt);

/// Outward-rounded enclosure of the chain's level interval.
Bracket bracket_for_chain(const PrimeChain& chain, const std::optional<Dyadic>& target_width = std::nullopt);

/// First n significant decimal digits shared by every A in the level interval
/// (truncated, not rounded). Throws NeedMoreDepth carrying the largest n that works.
std::string digits(const PrimeChain& chain, std::size_t n);

/// Largest n for which digits(chain, n) succeeds, searched up to `limit`.
std::size_t max_certified_digits(const PrimeChain& chain, std::size_t limit = 100000);

struct LevelCheck {
    std::size_t level = 0;
    BigInt value;
    PrimeStatus status = PrimeStatus::composite;
    bool nested = true;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<LevelCheck> levels;
    bool passed() const;
    /// Index of the first failing level (1-based), if any.
    std::optional<std::size_t> first_failure() const;
};

/// Checks, for every prefix length j, that a_j is prime and sits in the
/// admissible interval of a_{j-1}; together these certify floor(A^{C_j}) = a_j
/// for every A in the chain's level interval.
VerificationReport verify_representation(const PrimeChain& chain, const PrimalityConfig& cfg = {});

} // namespace primerep
