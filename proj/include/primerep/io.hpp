#pragma once

/// @file io.hpp
/// @brief Text formats shared by the command-line tool and the tests.
///
/// Tree records, one node per line in preorder:
///     depth,label,branching_total,truncated,pp_flag
/// depth counts edges from the seed, branching_total is "-" for leaves that were
/// not expanded, truncated and pp_flag are 0/1 (pp_flag = probable prime).
///
/// Level statistics CSV:
///     k,log_m,log_eps,estimate
/// estimate is empty on the first level. Level files read back by the tool
/// need only the first three columns.

#include "primerep/chain.hpp"
#include "primerep/constant.hpp"
#include "primerep/dimension.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace primerep {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// `--c 3` or `--c-seq 2,5/2,3 --c-tail 2`; theta and R default to the bounds of the values.
ExponentSequence parse_exponents(const std::optional<std::string>& constant, const std::optional<std::string>& seq,
                                 const std::optional<std::string>& tail, const std::optional<std::string>& theta,
                                 const std::optional<std::string>& bound);

std::vector<Rational> parse_rational_list(const std::string& text);

void write_tree_records(std::ostream& os, const TreeNode& root);

std::string tree_record(const TreeNode& node);

void write_levels_csv(std::ostream& os, const std::vector<LevelStats>& levels);

std::vector<LevelStats> read_levels_csv(std::istream& is);

nlohmann::json to_json(const ExponentSequence& e);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const std::vector<LevelStats>& levels);

/// {version, schema, config, rng_seed, pp_threshold}
nlohmann::json metadata(const nlohmann::json& config, const PrimalityConfig& cfg);

} // namespace primerep
