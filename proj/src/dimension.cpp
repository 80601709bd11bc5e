#include "primerep/dimension.hpp"

#include "primerep/certified.hpp"
#include "primerep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace primerep {

namespace {

const long double kLn2 = std::log(2.0L);
const long double kLn3 = std::log(3.0L);

long double log_of_dyadic(const Dyadic& d) {
    return log_of(d.mantissa) - static_cast<long double>(d.scale) * kLn2;
}

void collect(const TreeNode& node, std::map<std::size_t, std::vector<const TreeNode*>>& levels) {
    levels[node.chain.length()].push_back(&node);
    for (const auto& c : node.children) collect(c, levels);
}

// Certified lower bound of b^(1/C) - (a+1)^(1/C), as a natural log.
long double log_gap_lower(const BigInt& a, const BigInt& b, const Rational& C) {
    long double c = C.to_long_double();
    long double est = std::log(to_long_double(BigInt(b - a - 1))) - std::log(c)
                      + (1.0L / c - 1.0L) * log_of(b);
    long bits = std::max(0L, static_cast<long>(std::ceil(-est / kLn2)) + 24);
    for (;;) {
        Bracket upper = root_enclosure_bits(b, C, bits);
        Bracket lower = root_enclosure_bits(BigInt(a + 1), C, bits);
        Dyadic gap = upper.lo - lower.hi;
        if (gap.mantissa > 0) return log_of_dyadic(gap);
        bits += 32;
    }
}

} // namespace

const char* to_string(LevelSource s) { return s == LevelSource::analytic ? "analytic" : "measured"; }

void DimensionParams::validate() const {
    if (a1 < 2) throw InvalidArgument("a1 must be at least 2");
    if (!(Q > 0)) throw InvalidArgument("Q must be positive");
    if (!(L > 0)) throw InvalidArgument("L must be positive");
    if (!(delta > 0 && delta < 1)) throw InvalidArgument("delta must lie in (0, 1)");
    if (R < Rational(1) + theta) throw InvalidArgument("R must be at least 1 + theta");
}

long double falconer_estimate(std::span<const LevelStats> levels, int k) {
    if (levels.empty()) throw Inapplicable("no level statistics");
    const int k0 = levels.front().k;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].k != k0 + static_cast<int>(i)) throw InvalidArgument("levels are not consecutive");
    }
    if (k < k0 || k >= k0 + static_cast<int>(levels.size())) {
        throw InvalidArgument("level " + std::to_string(k) + " not covered");
    }
    long double numerator = 0;
    for (int i = k0; i <= k; ++i) {
        const auto& lv = levels[static_cast<std::size_t>(i - k0)];
        if (!(lv.log_m + 1e-12L >= kLn2)) {
            throw Inapplicable("m_" + std::to_string(i) + " < 2");
        }
        if (i < k) numerator += lv.log_m;
    }
    const auto& last = levels[static_cast<std::size_t>(k - k0)];
    long double denominator = -(last.log_m + last.log_eps);
    if (!(denominator > 0)) throw Inapplicable("m_k eps_k >= 1 at k = " + std::to_string(k));
    return numerator / denominator;
}

FalconerSummary falconer_series(std::span<const LevelStats> levels) {
    FalconerSummary out;
    if (levels.size() < 2) throw Inapplicable("need at least two levels");
    for (std::size_t i = 1; i < levels.size(); ++i) {
        out.points.push_back({levels[i].k, falconer_estimate(levels, levels[i].k)});
    }
    out.final_estimate = out.points.back().estimate;
    std::size_t window = static_cast<std::size_t>((levels.back().k + 1) / 2);
    window = std::clamp<std::size_t>(window, 1, out.points.size());
    out.liminf_proxy = std::numeric_limits<long double>::infinity();
    for (std::size_t i = out.points.size() - window; i < out.points.size(); ++i) {
        out.liminf_proxy = std::min(out.liminf_proxy, out.points[i].estimate);
    }
    return out;
}

std::vector<LevelStats> cantor_thirds_levels(int k_max) {
    if (k_max < 1) throw InvalidArgument("k_max must be at least 1");
    std::vector<LevelStats> out;
    for (int k = 1; k <= k_max; ++k) out.push_back({k, kLn2, -k * kLn3, LevelSource::analytic});
    return out;
}

std::vector<LevelStats> paper_levels_simple(const BigInt& p, long double d1, long double delta, int k_max) {
    if (p < 2) throw InvalidArgument("p must be at least 2");
    if (k_max < 2) throw InvalidArgument("k_max must be at least 2");
    if (!(d1 > 0)) throw InvalidArgument("d1 must be positive");
    const long double ln_p = log_of(p);
    const long double ln_p1 = log_of(BigInt(p + 1));
    std::vector<LevelStats> out;
    for (int k = 2; k <= k_max; ++k) {
        long double log_m = std::log(d1) + std::pow(3.0L, k - 2) * (2.0L - delta) * ln_p;
        long double log_eps = -k * kLn3 + (1.0L / 3.0L - std::pow(3.0L, k - 1)) * ln_p1;
        out.push_back({k, log_m, log_eps, LevelSource::analytic});
    }
    return out;
}

std::vector<LevelStats> paper_levels_general(const DimensionParams& params, const ExponentSequence& exponents,
                                             int k_max) {
    if (params.a1 < 2) throw InvalidArgument("a1 must be at least 2");
    if (!(params.Q > 0) || !(params.L > 0)) throw InvalidArgument("Q and L must be positive");
    if (k_max < 2) throw InvalidArgument("k_max must be at least 2");
    const long double ln_a = log_of(params.a1);
    const long double ln_a1 = log_of(BigInt(params.a1 + 1));
    const Rational C1 = exponents.C(1);
    std::vector<LevelStats> out;
    Rational prev = C1;
    for (int k = 2; k <= k_max; ++k) {
        Rational Ck = prev * exponents.c(static_cast<std::size_t>(k));
        long double ck = Ck.to_long_double();
        long double log_eps = -std::log(ck) + ((Rational(1) - Ck) / C1).to_long_double() * ln_a1;
        long double log_m = std::log(params.Q) + ((Ck - prev) / C1).to_long_double() * ln_a
                            - params.L * std::log(ck * ln_a);
        out.push_back({k, log_m, log_eps, LevelSource::analytic});
        prev = Ck;
    }
    return out;
}

long double simple_closed_form(const BigInt& p, long double delta) {
    if (p < 2) throw InvalidArgument("p must be at least 2");
    long double ln_p = log_of(p);
    long double p_ld = to_long_double(p);
    return (1.0L - delta / 2.0L) / (1.0L + delta + 3.0L / (p_ld * ln_p));
}

long double proposition_bound(const BigInt& a1, const Rational& R) {
    if (a1 < 2) throw InvalidArgument("a1 must be at least 2");
    long double a = to_long_double(a1);
    return 1.0L / (1.0L + R.to_long_double() / (a * log_of(a1)));
}

long double theorem_bound(const BigInt& p, const Rational& R) { return proposition_bound(p, R); }

long double log_growth_f(long double x, long double t, long double s, long double L) {
    if (!(x > 1)) throw InvalidArgument("f(x; t, s) needs x > 1");
    return (t - s) * std::log(x) - L * std::log(t * std::log(x));
}

BigInt general_branching_threshold(const DimensionParams& params, const ExponentSequence& exponents, int k_max) {
    if (k_max < 2) throw InvalidArgument("k_max must be at least 2");
    auto ok = [&](const BigInt& a1) {
        DimensionParams p = params;
        p.a1 = a1;
        auto levels = paper_levels_general(p, exponents, k_max);
        return std::all_of(levels.begin(), levels.end(), [](const LevelStats& l) { return l.log_m >= kLn2; });
    };
    // Start inside the range where every m_k is increasing in a1.
    long double min_gap = std::numeric_limits<long double>::infinity();
    Rational C1 = exponents.C(1);
    for (int k = 2; k <= k_max; ++k) {
        auto k_sz = static_cast<std::size_t>(k);
        min_gap = std::min(min_gap, ((exponents.C(k_sz) - exponents.C(k_sz - 1)) / C1).to_long_double());
    }
    long double start = std::ceil(std::exp(params.L / min_gap));
    BigInt lo = start < 1e18L ? BigInt(std::max(2.0, static_cast<double>(start))) : BigInt(1000000000000000000UL);
    if (ok(lo)) return lo;
    BigInt hi = lo * 2;
    while (!ok(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::vector<LevelStats> measured_levels(const TreeNode& root) {
    std::map<std::size_t, std::vector<const TreeNode*>> levels;
    collect(root, levels);
    const std::size_t deepest = levels.rbegin()->first;
    if (deepest < 3) {
        throw TruncatedTree("measured levels need a tree of depth >= 2, got depth " + std::to_string(deepest - 1));
    }
    std::vector<LevelStats> out;
    for (std::size_t k = 2; k <= deepest; ++k) {
        const auto& parents = levels[k - 1];
        std::uint64_t m_min = std::numeric_limits<std::uint64_t>::max();
        long double log_eps = std::numeric_limits<long double>::infinity();
        const Rational Ck = root.chain.exponents->C(k);
        for (const TreeNode* parent : parents) {
            if (!parent->expanded || parent->truncated) {
                throw TruncatedTree("node " + parent->label().get_str() + " at level " + std::to_string(k - 1)
                                    + " is truncated or unexpanded");
            }
            m_min = std::min(m_min, parent->branching_total);
            for (std::size_t i = 1; i < parent->children.size(); ++i) {
                log_eps = std::min(log_eps, log_gap_lower(parent->children[i - 1].label(),
                                                          parent->children[i].label(), Ck));
            }
        }
        if (m_min == 0 || std::isinf(log_eps)) {
            throw Inapplicable("level " + std::to_string(k) + " has no pair of sibling intervals");
        }
        out.push_back({static_cast<int>(k), std::log(static_cast<long double>(m_min)), log_eps,
                       LevelSource::measured});
    }
    return out;
}

} // namespace primerep
