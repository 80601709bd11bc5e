#include "primerep/chain.hpp"

#include "primerep/certified.hpp"
#include "primerep/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

namespace primerep {

ExponentSequence::ExponentSequence(std::vector<Rational> head, Rational tail, Rational theta, Rational bound)
    : head_(std::move(head)), tail_(std::move(tail)), theta_(std::move(theta)), bound_(std::move(bound)) {
    if (theta_ < Rational(0)) throw InvalidArgument("theta must be nonnegative, got " + theta_.str());
    if (bound_ < Rational(1) + theta_) throw InvalidArgument("R must be at least 1 + theta");
    auto check = [&](const Rational& c) {
        if (c < Rational(1) + theta_ || c > bound_) {
            throw InvalidArgument("exponent " + c.str() + " outside [1 + theta, R] = [" + (Rational(1) + theta_).str()
                                  + ", " + bound_.str() + "]");
        }
    };
    for (const auto& c : head_) check(c);
    check(tail_);
}

ExponentSequence ExponentSequence::constant(const Rational& c) {
    return ExponentSequence({}, c, c - Rational(1), c);
}

ExponentSequence ExponentSequence::from_values(std::vector<Rational> head, const Rational& tail) {
    Rational lo = tail;
    Rational hi = tail;
    for (const auto& c : head) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return ExponentSequence(std::move(head), tail, lo - Rational(1), hi);
}

const Rational& ExponentSequence::c(std::size_t k) const {
    if (k == 0) throw InvalidArgument("exponent index starts at 1");
    return k <= head_.size() ? head_[k - 1] : tail_;
}

Rational ExponentSequence::C(std::size_t k) const {
    Rational p(1);
    for (std::size_t i = 1; i <= k; ++i) p *= c(i);
    return p;
}

std::string ExponentSequence::describe() const {
    std::ostringstream os;
    os << "c=[";
    for (std::size_t i = 0; i < head_.size(); ++i) os << (i ? "," : "") << head_[i];
    os << (head_.empty() ? "" : ",") << tail_ << ",...] theta=" << theta_ << " R=" << bound_;
    return os.str();
}

PrimeChain::PrimeChain(ExponentsPtr exps, std::vector<BigInt> elems)
    : exponents(std::move(exps)), elements(std::move(elems)) {
    if (!exponents) throw InvalidArgument("chain without exponent sequence");
    if (elements.empty()) throw InvalidArgument("empty chain");
}

PrimeChain PrimeChain::extended(BigInt next) const {
    PrimeChain out = *this;
    out.elements.push_back(std::move(next));
    return out;
}

const char* to_string(SuccessorPolicy p) { return p == SuccessorPolicy::full ? "full" : "counting"; }

SuccessorPolicy parse_policy(const std::string& s) {
    if (s == "full") return SuccessorPolicy::full;
    if (s == "counting") return SuccessorPolicy::counting;
    throw InvalidArgument("unknown successor policy: " + s);
}

IntegerInterval admissible_interval(const BigInt& a, const Rational& c) {
    if (a < 1) throw InvalidArgument("admissible_interval needs a >= 1");
    return {pow_ceil(a, c), BigInt(pow_ceil(BigInt(a + 1), c) - 1)};
}

IntegerInterval counting_subinterval(const BigInt& a, const Rational& c) {
    if (a < 1) throw InvalidArgument("counting_subinterval needs a >= 1");
    if (c < Rational(1)) throw InvalidArgument("counting_subinterval needs c >= 1");
    // a^c + a^(c-1) = a^(c-1) (a+1) = (a^(n-d) (a+1)^d)^(1/d) for c = n/d.
    unsigned long n = to_exponent(c.num(), "exponent numerator");
    unsigned long d = to_exponent(c.den(), "exponent denominator");
    BigInt radicand = pow_int(a, n - d) * pow_int(BigInt(a + 1), d);
    return {pow_ceil(a, c), floor_root(radicand, d)};
}

IntegerInterval successor_interval(const BigInt& a, const Rational& c, SuccessorPolicy policy) {
    return policy == SuccessorPolicy::full ? admissible_interval(a, c) : counting_subinterval(a, c);
}

PrimeList successors(const PrimeChain& chain, SuccessorPolicy policy, const RangeOptions& opt) {
    auto iv = successor_interval(chain.last(), chain.next_exponent(), policy);
    return primes_in_range(iv.lo, iv.hi, opt);
}

PrimeChain extend_greedy(PrimeChain chain, std::size_t steps, const RangeOptions& opt) {
    for (std::size_t i = 0; i < steps; ++i) {
        auto iv = admissible_interval(chain.last(), chain.next_exponent());
        auto p = first_prime_in_range(iv.lo, iv.hi, opt);
        if (!p) {
            throw NoPrimeInInterval("no prime in [" + iv.lo.get_str() + ", " + iv.hi.get_str() + "] after "
                                    + chain.last().get_str());
        }
        chain.elements.push_back(std::move(*p));
    }
    return chain;
}

namespace {

PrimeStatus status_of(const BigInt& p, const PrimalityConfig& cfg) {
    return p < deterministic_threshold() ? PrimeStatus::prime : classify(p, cfg);
}

struct Expansion {
    std::uint64_t total = 0;
    PrimeList children;
    std::exception_ptr error;
};

template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

TreeResult enumerate_tree_partial(const BigInt& seed, ExponentsPtr exponents, const TreeOptions& opt) {
    TreeResult result{TreeNode{PrimeChain(exponents, {seed}), {}}, 1, nullptr};
    if (opt.branch_cap && *opt.branch_cap == 0) {
        result.error = std::make_exception_ptr(InvalidArgument("branch cap must be positive"));
        return result;
    }
    result.root.status = classify(seed, opt.range.primality);
    if (result.root.status == PrimeStatus::composite) {
        result.error = std::make_exception_ptr(InvalidArgument("seed " + seed.get_str() + " is not prime"));
        return result;
    }

    std::atomic<std::size_t> nodes{1};
    std::vector<TreeNode*> frontier{&result.root};
    for (std::size_t level = 0; level < opt.depth && !frontier.empty(); ++level) {
        std::vector<Expansion> out(frontier.size());
        parallel_for(frontier.size(), opt.workers, [&](std::size_t i) {
            try {
                const TreeNode& node = *frontier[i];
                auto iv = successor_interval(node.label(), node.chain.next_exponent(), opt.policy);
                Expansion& e = out[i];
                if (opt.branch_cap) {
                    e.total = count_primes_in_range(iv.lo, iv.hi, opt.range);
                    e.children = first_primes_in_range(iv.lo, iv.hi, *opt.branch_cap, opt.range);
                } else {
                    e.children = primes_in_range(iv.lo, iv.hi, opt.range);
                    e.total = e.children.size();
                }
                std::size_t after = nodes.fetch_add(e.children.size(), std::memory_order_relaxed) + e.children.size();
                if (after > opt.max_nodes) {
                    throw BudgetExceeded("node budget of " + std::to_string(opt.max_nodes) + " exceeded at depth "
                                         + std::to_string(level + 1));
                }
            } catch (...) {
                out[i].error = std::current_exception();
            }
        });

        std::vector<TreeNode*> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            if (out[i].error) {
                result.error = out[i].error;
                return result;
            }
            TreeNode& node = *frontier[i];
            node.expanded = true;
            node.branching_total = out[i].total;
            node.truncated = out[i].children.size() < out[i].total;
            node.children.reserve(out[i].children.size());
            for (auto& p : out[i].children) {
                TreeNode child{node.chain.extended(p), {}};
                child.status = status_of(p, opt.range.primality);
                node.children.push_back(std::move(child));
            }
            result.node_count += node.children.size();
        }
        for (TreeNode* node : frontier) {
            for (auto& child : node->children) next.push_back(&child);
        }
        frontier = std::move(next);
    }
    return result;
}

TreeNode enumerate_tree(const BigInt& seed, ExponentsPtr exponents, const TreeOptions& opt) {
    TreeResult r = enumerate_tree_partial(seed, std::move(exponents), opt);
    if (r.error) std::rethrow_exception(r.error);
    return std::move(r.root);
}

std::size_t count_nodes(const TreeNode& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) n += count_nodes(c);
    return n;
}

long double branching_lower_bound(const BigInt& a, const Rational& c, long double Q, long double L) {
    if (a < 2) throw InvalidArgument("branching_lower_bound needs a >= 2");
    long double ln_a = log_of(a);
    long double cc = c.to_long_double();
    long double log_value = std::log(Q) + (cc - 1.0L) * ln_a - L * std::log(cc * ln_a);
    return std::exp(log_value);
}

namespace {

void collect_ratios(const TreeNode& node, std::vector<BranchingRatio>& out) {
    if (node.expanded && node.label() >= 2) {
        long double cc = node.chain.next_exponent().to_long_double();
        long double ln_a = log_of(node.label());
        long double ratio = node.branching_total == 0
                                ? 0.0L
                                : std::exp(std::log(static_cast<long double>(node.branching_total))
                                           + std::log(cc * ln_a) - (cc - 1.0L) * ln_a);
        out.push_back({node.depth(), node.label(), node.branching_total, ratio});
    }
    for (const auto& c : node.children) collect_ratios(c, out);
}

void collect_levels(const TreeNode& node, std::map<std::size_t, std::vector<const TreeNode*>>& levels) {
    levels[node.depth()].push_back(&node);
    for (const auto& c : node.children) collect_levels(c, levels);
}

} // namespace

std::vector<BranchingRatio> branching_ratios(const TreeNode& root) {
    std::vector<BranchingRatio> out;
    collect_ratios(root, out);
    return out;
}

std::vector<std::string> tree_violations(const TreeNode& root) {
    std::vector<std::string> issues;
    std::map<std::size_t, std::vector<const TreeNode*>> levels;
    collect_levels(root, levels);

    for (const auto& [depth, nodes] : levels) {
        for (const TreeNode* node : nodes) {
            const std::string where = "node " + node->label().get_str() + " at depth " + std::to_string(depth);
            if (node->status == PrimeStatus::composite || !is_prime(node->label())) issues.push_back(where + ": not prime");
            if (!node->expanded) {
                if (!node->children.empty()) issues.push_back(where + ": unexpanded node with children");
                continue;
            }
            if (node->children.size() > node->branching_total) issues.push_back(where + ": more children than total");
            if ((node->children.size() == node->branching_total) == node->truncated) {
                issues.push_back(where + ": truncated flag disagrees with child count");
            }
            const Rational& c = node->chain.next_exponent();
            auto iv = admissible_interval(node->label(), c);
            for (std::size_t i = 0; i < node->children.size(); ++i) {
                const TreeNode& ch = node->children[i];
                if (ch.chain.length() != node->chain.length() + 1
                    || !std::equal(node->chain.elements.begin(), node->chain.elements.end(), ch.chain.elements.begin())) {
                    issues.push_back(where + ": child does not extend the chain");
                }
                if (ch.label() < iv.lo || ch.label() > iv.hi) {
                    issues.push_back(where + ": child " + ch.label().get_str() + " breaks nesting");
                }
                if (i > 0 && !(node->children[i - 1].label() < ch.label())) {
                    issues.push_back(where + ": children not strictly ascending");
                }
            }
        }

        // Separation and disjointness of the next-level intervals among same-level labels.
        std::vector<const TreeNode*> sorted = nodes;
        std::sort(sorted.begin(), sorted.end(), [](auto* x, auto* y) { return x->label() < y->label(); });
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            const BigInt& a = sorted[i - 1]->label();
            const BigInt& b = sorted[i]->label();
            if (b - a < 2) issues.push_back("labels " + a.get_str() + " and " + b.get_str() + " closer than 2");
            const Rational& c = sorted[i]->chain.next_exponent();
            if (!(admissible_interval(a, c).hi < admissible_interval(b, c).lo)) {
                issues.push_back("next-level intervals of " + a.get_str() + " and " + b.get_str() + " overlap");
            }
        }
    }
    return issues;
}

} // namespace primerep
