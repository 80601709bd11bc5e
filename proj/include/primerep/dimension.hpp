#pragma once

/// @file dimension.hpp
/// @brief Falconer's lower bound for nested interval constructions.
///
/// For a construction where every level-(k-1) interval holds at least m_k >= 2
/// level-k intervals separated by gaps of at least eps_k,
///
///     dim_H F >= liminf_k  log(m_1 ... m_{k-1}) / -log(m_k eps_k).
///
/// The branching and gap sequences of the prime-chain constructions grow like
/// p^{3^k}, so every level is stored as (ln m_k, ln eps_k).

#include "primerep/chain.hpp"
#include "primerep/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace primerep {

enum class LevelSource { analytic, measured };

const char* to_string(LevelSource s);

struct LevelStats {
    int k = 0;
    long double log_m = 0;
    long double log_eps = 0;
    LevelSource source = LevelSource::analytic;
};

struct DimensionParams {
    BigInt a1;
    long double Q = 1;
    long double L = 1;
    Rational theta{1};
    Rational R{2};
    long double delta = 0.5L;

    void validate() const;
};

/// log(m_{k0} ... m_{k-1}) / -log(m_k eps_k), where k0 is the first level in
/// `levels`. Levels must be consecutive. Throws Inapplicable when some m_i < 2
/// (k0 <= i <= k) or m_k eps_k >= 1.
long double falconer_estimate(std::span<const LevelStats> levels, int k);

struct FalconerPoint {
    int k;
    long double estimate;
};

struct FalconerSummary {
    std::vector<FalconerPoint> points;
    long double final_estimate = 0;
    /// Minimum over the last ceil(k/2) estimates.
    long double liminf_proxy = 0;
};

/// Estimates at every level from the second one on.
FalconerSummary falconer_series(std::span<const LevelStats> levels);

/// m_i = 2, eps_i = 3^-i for i = 1..k_max.
std::vector<LevelStats> cantor_thirds_levels(int k_max);

/// The c = 3 construction: m_k = d1 p^{3^{k-2}(2-delta)}, eps_k = 3^-k (p+1)^{1/3 - 3^{k-1}}, k = 2..k_max.
std::vector<LevelStats> paper_levels_simple(const BigInt& p, long double d1, long double delta, int k_max);

/// General construction, k = 2..k_max:
///   eps_k = (1/C_k) (a1+1)^{(1-C_k)/C_1},
///   m_k   = Q a1^{(C_k - C_{k-1})/C_1} / (C_k ln a1)^L.
std::vector<LevelStats> paper_levels_general(const DimensionParams& params, const ExponentSequence& exponents,
                                             int k_max);

/// (1 - delta/2) / (1 + delta + 3/(p ln p)).
long double simple_closed_form(const BigInt& p, long double delta);

/// 1 / (1 + R/(a1 ln a1)).
long double proposition_bound(const BigInt& a1, const Rational& R);

/// Same formula as proposition_bound, for a seed prime p.
long double theorem_bound(const BigInt& p, const Rational& R);

/// ln f(x; t, s) with f(x; t, s) = x^{t-s} (t ln x)^{-L}.
long double log_growth_f(long double x, long double t, long double s, long double L);

/// Smallest a1 (to within one unit) such that every general-preset m_k, k = 2..k_max, is at least 2.
BigInt general_branching_threshold(const DimensionParams& params, const ExponentSequence& exponents, int k_max);

/// Level statistics of an enumerated tree, for levels k = 2..(depth + 1):
/// m_k = least branching_total among level-(k-1) nodes and eps_k = certified
/// lower bound of the least gap b^{1/C_k} - (a+1)^{1/C_k} between adjacent siblings.
/// Throws TruncatedTree when the tree has depth < 2 or any expanded node is truncated.
std::vector<LevelStats> measured_levels(const TreeNode& root);

} // namespace primerep
