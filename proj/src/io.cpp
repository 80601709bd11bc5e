#include "primerep/io.hpp"

#include "primerep/errors.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace primerep {

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(Rational::parse(item));
    }
    if (out.empty()) throw InvalidArgument("empty exponent list");
    return out;
}

ExponentSequence parse_exponents(const std::optional<std::string>& constant, const std::optional<std::string>& seq,
                                 const std::optional<std::string>& tail, const std::optional<std::string>& theta,
                                 const std::optional<std::string>& bound) {
    std::vector<Rational> head;
    Rational last;
    if (constant && (seq || tail)) throw InvalidArgument("--c cannot be combined with --c-seq/--c-tail");
    if (constant) {
        last = Rational::parse(*constant);
    } else if (seq) {
        head = parse_rational_list(*seq);
        if (tail) {
            last = Rational::parse(*tail);
        } else {
            last = head.back();
            head.pop_back();
        }
    } else {
        throw InvalidArgument("an exponent is required: --c or --c-seq");
    }
    ExponentSequence defaults = ExponentSequence::from_values(head, last);
    Rational th = theta ? Rational::parse(*theta) : defaults.theta();
    Rational r = bound ? Rational::parse(*bound) : defaults.bound();
    return ExponentSequence(std::move(head), last, th, r);
}

std::string tree_record(const TreeNode& node) {
    std::ostringstream os;
    os << node.depth() << ',' << node.label().get_str() << ',';
    if (node.expanded) {
        os << node.branching_total;
    } else {
        os << '-';
    }
    os << ',' << (node.truncated ? 1 : 0) << ',' << (node.status == PrimeStatus::probable_prime ? 1 : 0);
    return os.str();
}

void write_tree_records(std::ostream& os, const TreeNode& root) {
    os << tree_record(root) << '\n';
    for (const auto& c : root.children) write_tree_records(os, c);
}

void write_levels_csv(std::ostream& os, const std::vector<LevelStats>& levels) {
    os << "k,log_m,log_eps,estimate\n";
    auto prec = os.precision();
    os << std::setprecision(17);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        os << levels[i].k << ',' << static_cast<double>(levels[i].log_m) << ','
           << static_cast<double>(levels[i].log_eps) << ',';
        if (i > 0) {
            try {
                os << static_cast<double>(
                    falconer_estimate(std::span<const LevelStats>(levels.data(), i + 1), levels[i].k));
            } catch (const Inapplicable&) {
                os << "inapplicable";
            }
        }
        os << '\n';
    }
    os.precision(prec);
}

std::vector<LevelStats> read_levels_csv(std::istream& is) {
    std::vector<LevelStats> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("k,", 0) == 0) continue;
        std::stringstream ss(line);
        std::string k, lm, le;
        if (!std::getline(ss, k, ',') || !std::getline(ss, lm, ',') || !std::getline(ss, le, ',')) {
            throw InvalidArgument("levels file line " + std::to_string(lineno) + ": expected k,log_m,log_eps");
        }
        try {
            out.push_back({std::stoi(k), std::stold(lm), std::stold(le), LevelSource::measured});
        } catch (const std::exception&) {
            throw InvalidArgument("levels file line " + std::to_string(lineno) + ": not numeric");
        }
    }
    return out;
}

nlohmann::json to_json(const ExponentSequence& e) {
    nlohmann::json head = nlohmann::json::array();
    for (const auto& c : e.head()) head.push_back(c.str());
    return {{"head", head}, {"tail", e.tail().str()}, {"theta", e.theta().str()}, {"R", e.bound().str()}};
}

nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"level", l.level},
                          {"value", l.value.get_str()},
                          {"status", to_string(l.status)},
                          {"nested", l.nested},
                          {"pass", l.pass},
                          {"detail", l.detail}});
    }
    return {{"passed", r.passed()}, {"levels", levels}};
}

nlohmann::json to_json(const std::vector<LevelStats>& levels) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : levels) {
        arr.push_back({{"k", l.k},
                       {"log_m", static_cast<double>(l.log_m)},
                       {"log_eps", static_cast<double>(l.log_eps)},
                       {"source", to_string(l.source)}});
    }
    return arr;
}

nlohmann::json metadata(const nlohmann::json& config, const PrimalityConfig& cfg) {
    return {{"version", kVersion},
            {"schema", kSchemaVersion},
            {"config", config},
            {"rng_seed", cfg.rng_seed},
            {"extra_rounds", cfg.extra_rounds},
            {"pp_threshold", deterministic_threshold().get_str()}};
}

} // namespace primerep
