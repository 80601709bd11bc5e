#pragma once

/// @file chain.hpp
/// @brief Prime chains and the tree of all chains below a seed prime.
///
/// A chain (a_1, ..., a_k) with a_{i+1} in [ceil(a_i^c), ceil((a_i + 1)^c) - 1]
/// for c = c_{i+1} pins down the half-open interval of constants A with
/// floor(A^{C_j}) = a_j for every j <= k, where C_j = c_1 * ... * c_j.

#include "primerep/primality.hpp"
#include "primerep/rational.hpp"

#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace primerep {

/// The exponent sequence (c_k): an explicit head followed by a constant tail,
/// with bounds 1 + theta <= c_k <= R.
class ExponentSequence {
public:
    ExponentSequence(std::vector<Rational> head, Rational tail, Rational theta, Rational bound);

    /// c_k = c for all k, theta = c - 1, R = c.
    static ExponentSequence constant(const Rational& c);
    /// Bounds taken from the values themselves: theta = min c_k - 1, R = max c_k.
    static ExponentSequence from_values(std::vector<Rational> head, const Rational& tail);

    /// c_k for k >= 1.
    const Rational& c(std::size_t k) const;
    /// C_k = c_1 ... c_k, with C_0 = 1.
    Rational C(std::size_t k) const;

    const std::vector<Rational>& head() const { return head_; }
    const Rational& tail() const { return tail_; }
    const Rational& theta() const { return theta_; }
    const Rational& bound() const { return bound_; }

    std::string describe() const;

private:
    std::vector<Rational> head_;
    Rational tail_;
    Rational theta_;
    Rational bound_;
};

using ExponentsPtr = std::shared_ptr<const ExponentSequence>;

struct PrimeChain {
    ExponentsPtr exponents;
    std::vector<BigInt> elements;

    PrimeChain(ExponentsPtr exps, std::vector<BigInt> elems);

    std::size_t length() const { return elements.size(); }
    const BigInt& last() const { return elements.back(); }
    /// Exponent that takes the last element to the next one.
    const Rational& next_exponent() const { return exponents->c(length() + 1); }
    PrimeChain extended(BigInt next) const;
};

struct IntegerInterval {
    BigInt lo;
    BigInt hi;
    friend bool operator==(const IntegerInterval&, const IntegerInterval&) = default;
};

enum class SuccessorPolicy { full, counting };

const char* to_string(SuccessorPolicy p);
SuccessorPolicy parse_policy(const std::string& s);

/// [ceil(a^c), ceil((a+1)^c) - 1]: the integers n with a^c <= n < (a+1)^c.
IntegerInterval admissible_interval(const BigInt& a, const Rational& c);

/// [ceil(a^c), floor(a^c + a^(c-1))], the short interval used by the density argument.
IntegerInterval counting_subinterval(const BigInt& a, const Rational& c);

IntegerInterval successor_interval(const BigInt& a, const Rational& c, SuccessorPolicy policy);

PrimeList successors(const PrimeChain& chain, SuccessorPolicy policy, const RangeOptions& opt = {});

/// Appends the smallest admissible prime `steps` times. Throws NoPrimeInInterval.
PrimeChain extend_greedy(PrimeChain chain, std::size_t steps, const RangeOptions& opt = {});

struct TreeNode {
    PrimeChain chain;
    std::vector<TreeNode> children;
    /// Number of successors before any cap; meaningful only when expanded.
    std::uint64_t branching_total = 0;
    bool truncated = false;
    /// False for leaves at the depth limit, whose successors were not counted.
    bool expanded = false;
    PrimeStatus status = PrimeStatus::prime;

    std::size_t depth() const { return chain.length() - 1; }
    const BigInt& label() const { return chain.last(); }
};

struct TreeOptions {
    std::size_t depth = 1;
    std::optional<std::size_t> branch_cap;
    SuccessorPolicy policy = SuccessorPolicy::full;
    std::size_t max_nodes = 1'000'000;
    unsigned workers = 1;
    RangeOptions range{};
};

struct TreeResult {
    TreeNode root;
    std::size_t node_count = 0;
    /// Set when enumeration stopped early; `root` then holds what was built.
    std::exception_ptr error;

    bool complete() const { return error == nullptr; }
};

/// Builds the tree level by level; failures are returned rather than thrown.
TreeResult enumerate_tree_partial(const BigInt& seed, ExponentsPtr exponents, const TreeOptions& opt);

/// Throws on any failure (RangeTooLarge, BudgetExceeded, ...).
TreeNode enumerate_tree(const BigInt& seed, ExponentsPtr exponents, const TreeOptions& opt);

std::size_t count_nodes(const TreeNode& node);

/// Q * a^(c-1) / (c ln a)^L in long double; a diagnostic, not a certified value.
long double branching_lower_bound(const BigInt& a, const Rational& c, long double Q, long double L);

/// m * (c ln a) / a^(c-1) for one expanded node: the measured density constant.
struct BranchingRatio {
    std::size_t depth;
    BigInt label;
    std::uint64_t branching_total;
    long double ratio;
};

std::vector<BranchingRatio> branching_ratios(const TreeNode& root);

/// Structural checks on an enumerated tree (nesting, ordering, disjointness,
/// separation, child counts). Returns human-readable violations.
std::vector<std::string> tree_violations(const TreeNode& root);

} // namespace primerep
