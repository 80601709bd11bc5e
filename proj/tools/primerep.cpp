// primerep: prime chains, certified constants, Falconer estimates and
// short-interval prime surveys from the command line.

#include "primerep/certified.hpp"
#include "primerep/chain.hpp"
#include "primerep/constant.hpp"
#include "primerep/dimension.hpp"
#include "primerep/errors.hpp"
#include "primerep/io.hpp"
#include "primerep/primality.hpp"
#include "primerep/survey.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

using namespace primerep;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;

struct ExponentFlags {
    std::optional<std::string> c, seq, tail, theta, R;

    void attach(CLI::App* cmd) {
        cmd->add_option("--c", c, "Constant exponent, e.g. 3 or 5/2");
        cmd->add_option("--c-seq", seq, "Comma-separated leading exponents c_1,c_2,...");
        cmd->add_option("--c-tail", tail, "Exponent repeated after --c-seq");
        cmd->add_option("--theta", theta, "Lower bound: every c_k >= 1 + theta");
        cmd->add_option("--R", R, "Upper bound: every c_k <= R");
    }
    ExponentsPtr build() const {
        return std::make_shared<const ExponentSequence>(parse_exponents(c, seq, tail, theta, R));
    }
};

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- mills ------------------------------------------------------------------

struct MillsArgs {
    std::string seed = "2";
    ExponentFlags exps;
    std::size_t steps = 3;
    std::size_t digits = 10;
    bool allow_partial = false;
    std::string out = "json";
};

int run_mills(const MillsArgs& a) {
    RangeOptions range = RangeOptions::from_environment();
    BigInt seed = parse_bigint(a.seed);
    if (!is_prime(seed, range.primality)) {
        std::cerr << "error: seed " << a.seed << " is not prime\n";
        return kExitFailure;
    }
    auto exps = a.exps.build();
    PrimeChain chain = extend_greedy(PrimeChain(exps, {seed}), a.steps, range);
    VerificationReport report = verify_representation(chain, range.primality);

    std::string dig;
    bool partial = false;
    std::size_t certified = a.digits;
    try {
        dig = digits(chain, a.digits);
    } catch (const NeedMoreDepth& e) {
        certified = e.max_supported();
        if (!a.allow_partial) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitFailure;
        }
        partial = true;
        dig = certified > 0 ? digits(chain, certified) : "";
    }

    json pp = json::array();
    json elems = json::array();
    for (const auto& v : chain.elements) {
        elems.push_back(v.get_str());
        pp.push_back(classify(v, range.primality) == PrimeStatus::probable_prime);
    }

    if (a.out == "json") {
        json config = {{"seed", a.seed},
                       {"exponents", to_json(*exps)},
                       {"steps", a.steps},
                       {"digits", a.digits},
                       {"allow_partial", a.allow_partial}};
        json doc = {{"chain", elems},
                    {"digits", dig},
                    {"certified_digits", certified},
                    {"partial", partial},
                    {"verification", to_json(report)},
                    {"probable_prime_flags", pp},
                    {"metadata", metadata(config, range.primality)}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "chain:";
        for (const auto& v : chain.elements) std::cout << ' ' << v.get_str();
        std::cout << "\ndigits: " << dig << (partial ? " (partial)" : "") << "\n";
        std::cout << "verification: " << (report.passed() ? "pass" : "FAIL") << "\n";
        for (const auto& l : report.levels) {
            if (!l.pass) std::cout << "  level " << l.level << ": " << l.detail << "\n";
        }
    }
    return report.passed() ? 0 : kExitFailure;
}

// ---- tree -------------------------------------------------------------------

struct TreeArgs {
    std::string seed = "2";
    ExponentFlags exps;
    std::size_t depth = 1;
    std::optional<std::size_t> cap;
    std::string policy = "full";
    std::size_t max_nodes = 1'000'000;
    unsigned workers = 1;
};

int run_tree(const TreeArgs& a) {
    TreeOptions opt;
    opt.depth = a.depth;
    opt.branch_cap = a.cap;
    opt.policy = parse_policy(a.policy);
    opt.max_nodes = a.max_nodes;
    opt.workers = a.workers;
    opt.range = RangeOptions::from_environment();
    TreeResult r = enumerate_tree_partial(parse_bigint(a.seed), a.exps.build(), opt);
    write_tree_records(std::cout, r.root);
    if (r.complete()) return 0;
    try {
        std::rethrow_exception(r.error);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << " (partial output: " << r.node_count << " nodes)\n";
    }
    return kExitPartial;
}

// ---- dimension --------------------------------------------------------------

struct DimensionArgs {
    std::optional<std::string> preset;
    std::optional<std::string> levels_file;
    std::optional<std::string> bound;
    int kmax = 12;
    std::string p = "11";
    std::string a1 = "1009";
    std::string R = "2";
    long double delta = 0.01L;
    long double d1 = 0.5L;
    long double Q = 0.5L;
    long double L = 1.0L;
    ExponentFlags exps;
    std::string seed = "100003";
    std::size_t depth = 2;
    unsigned workers = 1;
    std::string out = "csv";
};

std::vector<LevelStats> dimension_levels(const DimensionArgs& a, json& extra) {
    if (a.levels_file) {
        std::ifstream in(*a.levels_file);
        if (!in) throw InvalidArgument("cannot open " + *a.levels_file);
        return read_levels_csv(in);
    }
    const std::string& preset = *a.preset;
    if (preset == "cantor-thirds") return cantor_thirds_levels(a.kmax);
    if (preset == "paper-simple") {
        BigInt p = parse_bigint(a.p);
        extra["d1"] = static_cast<double>(a.d1);
        extra["closed_form"] = static_cast<double>(simple_closed_form(p, a.delta));
        return paper_levels_simple(p, a.d1, a.delta, a.kmax);
    }
    auto exps = a.exps.c || a.exps.seq ? a.exps.build() : std::make_shared<const ExponentSequence>(
                                                              ExponentSequence::constant(Rational(2)));
    if (preset == "paper-general") {
        DimensionParams params;
        params.a1 = parse_bigint(a.a1);
        params.Q = a.Q;
        params.L = a.L;
        params.theta = exps->theta();
        params.R = exps->bound();
        params.delta = a.delta;
        params.validate();
        extra["proposition_bound"] = static_cast<double>(proposition_bound(params.a1, params.R));
        return paper_levels_general(params, *exps, a.kmax);
    }
    if (preset == "measured") {
        TreeOptions opt;
        opt.depth = a.depth;
        opt.workers = a.workers;
        opt.range = RangeOptions::from_environment();
        TreeNode root = enumerate_tree(parse_bigint(a.seed), exps, opt);
        extra["theorem_bound"] = static_cast<double>(theorem_bound(root.label(), exps->bound()));
        return measured_levels(root);
    }
    throw InvalidArgument("unknown preset '" + preset + "'");
}

int run_dimension(const DimensionArgs& a) {
    if (a.bound) {
        Rational R = Rational::parse(a.R);
        long double v;
        if (*a.bound == "theorem") {
            v = theorem_bound(parse_bigint(a.p), R);
        } else if (*a.bound == "proposition") {
            v = proposition_bound(parse_bigint(a.a1), R);
        } else {
            throw InvalidArgument("--bound must be theorem or proposition");
        }
        if (a.out == "json") {
            std::cout << json{{"bound", *a.bound}, {"value", static_cast<double>(v)}}.dump(2) << "\n";
        } else {
            std::cout << std::setprecision(10) << static_cast<double>(v) << "\n";
        }
        return 0;
    }
    if (!a.preset && !a.levels_file) throw InvalidArgument("one of --preset, --levels-file or --bound is required");

    json extra = json::object();
    auto levels = dimension_levels(a, extra);
    if (a.out == "json") {
        FalconerSummary s = falconer_series(levels);
        json pts = json::array();
        for (const auto& p : s.points) pts.push_back({{"k", p.k}, {"estimate", static_cast<double>(p.estimate)}});
        json doc = {{"levels", to_json(levels)},
                    {"estimates", pts},
                    {"final_estimate", static_cast<double>(s.final_estimate)},
                    {"liminf_proxy", static_cast<double>(s.liminf_proxy)},
                    {"bounds", extra}};
        std::cout << doc.dump(2) << "\n";
    } else {
        write_levels_csv(std::cout, levels);
        std::cout << std::setprecision(17);
        for (auto& [k, v] : extra.items()) std::cout << "# " << k << "," << v.get<double>() << "\n";
    }
    return 0;
}

// ---- survey -----------------------------------------------------------------

struct SurveyArgs {
    std::vector<std::string> xs;
    std::string gamma = "2/3";
    std::string X = "100";
    std::string c = "2";
    long double d = 0.5L;
    unsigned workers = 1;
};

int run_survey_gamma(const SurveyArgs& a) {
    std::vector<BigInt> xs;
    for (const auto& x : a.xs) xs.push_back(parse_bigint(x));
    if (xs.empty()) throw InvalidArgument("--x is required");
    SurveyOptions opt{a.workers, RangeOptions::from_environment()};
    write_survey_csv(std::cout, gamma_survey(xs, Rational::parse(a.gamma), opt));
    return 0;
}

int run_survey_matomaki(const SurveyArgs& a) {
    SurveyOptions opt{a.workers, RangeOptions::from_environment()};
    MatomakiCensus census = matomaki_fraction(parse_bigint(a.X), Rational::parse(a.c), a.d, opt);
    write_survey_csv(std::cout, census.records);
    std::cout << std::setprecision(12) << "# total," << census.total << "\n# good," << census.good
              << "\n# fraction," << static_cast<double>(census.fraction) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prime-representing constants, prime chain trees and Falconer dimension estimates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    MillsArgs mills;
    auto* m = app.add_subcommand("mills", "Greedy prime chain, certified digits and verification");
    m->add_option("--seed", mills.seed, "Seed prime a_1")->capture_default_str();
    mills.exps.attach(m);
    m->add_option("--steps", mills.steps, "Number of greedy extensions")->capture_default_str();
    m->add_option("--digits", mills.digits, "Significant digits to certify")->capture_default_str();
    m->add_flag("--allow-partial", mills.allow_partial, "Print the certified prefix instead of failing");
    m->add_option("--out", mills.out, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    TreeArgs tree;
    auto* t = app.add_subcommand("tree", "Enumerate the tree of prime chains below a seed");
    t->add_option("--seed", tree.seed, "Seed prime")->capture_default_str();
    tree.exps.attach(t);
    t->add_option("--depth", tree.depth, "Depth in edges")->capture_default_str();
    t->add_option("--cap", tree.cap, "Keep at most this many children per node");
    t->add_option("--policy", tree.policy, "full or counting")->check(CLI::IsMember({"full", "counting"}))
        ->capture_default_str();
    t->add_option("--max-nodes", tree.max_nodes, "Node budget")->capture_default_str();
    t->add_option("--workers", tree.workers, "Worker threads")->default_val(default_workers());

    DimensionArgs dim;
    auto* d = app.add_subcommand("dimension", "Falconer estimates over level statistics, or closed-form bounds");
    d->add_option("--preset", dim.preset, "cantor-thirds, paper-simple, paper-general or measured")
        ->check(CLI::IsMember({"cantor-thirds", "paper-simple", "paper-general", "measured"}));
    d->add_option("--levels-file", dim.levels_file, "CSV with k,log_m,log_eps");
    d->add_option("--bound", dim.bound, "theorem or proposition")->check(CLI::IsMember({"theorem", "proposition"}));
    d->add_option("--kmax", dim.kmax, "Deepest level")->capture_default_str();
    d->add_option("--p", dim.p, "Seed prime for paper-simple and --bound theorem")->capture_default_str();
    d->add_option("--a1", dim.a1, "First element for paper-general and --bound proposition")->capture_default_str();
    d->add_option("--R", dim.R, "Exponent upper bound for --bound")->capture_default_str();
    d->add_option("--delta", dim.delta, "delta in (0, 1)")->capture_default_str();
    d->add_option("--d1", dim.d1, "Density constant for paper-simple")->capture_default_str();
    d->add_option("--Q", dim.Q, "Density constant for paper-general")->capture_default_str();
    d->add_option("--L", dim.L, "Log power for paper-general")->capture_default_str();
    d->add_option("--c", dim.exps.c, "Constant exponent (paper-general, measured); default 2");
    d->add_option("--c-seq", dim.exps.seq, "Leading exponents");
    d->add_option("--c-tail", dim.exps.tail, "Exponent after --c-seq");
    d->add_option("--seed", dim.seed, "Seed prime for measured")->capture_default_str();
    d->add_option("--depth", dim.depth, "Tree depth for measured")->capture_default_str();
    d->add_option("--workers", dim.workers, "Worker threads for measured")->default_val(default_workers());
    d->add_option("--out", dim.out, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    SurveyArgs sv;
    auto* s = app.add_subcommand("survey", "Prime counts in short intervals");
    s->require_subcommand(1);
    auto* sg = s->add_subcommand("gamma", "Primes in [x, x + x^gamma]");
    sg->add_option("--x", sv.xs, "Anchor(s)")->required();
    sg->add_option("--gamma", sv.gamma, "gamma in [1/2, 1]")->capture_default_str();
    sg->add_option("--workers", sv.workers, "Worker threads")->default_val(default_workers());
    auto* sm = s->add_subcommand("matomaki", "Fraction of p in [X, (3/2)^(1/c) X] with a well-populated window");
    sm->add_option("--X", sv.X, "Lower end of the anchor range")->capture_default_str();
    sm->add_option("--c", sv.c, "Exponent c >= 2")->capture_default_str();
    sm->add_option("--d", sv.d, "Threshold in [0, 1)")->capture_default_str();
    sm->add_option("--workers", sv.workers, "Worker threads")->default_val(default_workers());

    CLI11_PARSE(app, argc, argv);

    try {
        if (m->parsed()) return run_mills(mills);
        if (t->parsed()) return run_tree(tree);
        if (d->parsed()) return run_dimension(dim);
        if (sg->parsed()) return run_survey_gamma(sv);
        if (sm->parsed()) return run_survey_matomaki(sv);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
