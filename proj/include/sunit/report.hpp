#pragma once

// Run configuration, dispatch, and structured reports.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sunit/pipelines.hpp"

namespace sunit {

using json = nlohmann::ordered_json;

// Integers that fit int64 are written as numbers, larger ones as decimal strings.
json int_to_json(Int v);
Int int_from_json(const json& j);

json to_json(const PrimeSet& s);
json to_json(const BoundComparison& b);
json to_json(const HarvestReport& r);
HarvestReport harvest_report_from_json(const json& j);

// CSV of solutions; columns depend on the equation (thm1: A,C,a,c,u,w).
std::vector<std::string> solution_csv_header(Equation e);
void write_solutions_csv(std::ostream& out, const HarvestReport& r);
std::vector<SolutionRow> read_solutions_csv(std::istream& in, Equation e);

using KeyValues = std::map<std::string, std::string>;

// One key=value per line; '#' starts a comment. Throws ConfigError on
// malformed lines and repeated keys.
KeyValues parse_key_values(std::istream& in);
KeyValues load_config(const std::string& path);

struct RunConfig {
  std::string subcommand;  // thm1 thm2 prop1 oracle exponents smooth siegel verify-charsums verify-sieve verify-circle
  KeyValues params;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::optional<std::uint64_t> cap;
  std::string out_path;        // JSON report; empty for none
  std::string solutions_path;  // CSV artifact; empty for none
};

// Keys accepted by a subcommand's parameter map.
const std::vector<std::string>& allowed_keys(const std::string& subcommand);

// Builds the pipeline configuration, deriving Z, W (and Y, Q, R) from alpha
// through the exponent tables unless given explicitly.
HarvestConfig harvest_config_from(const RunConfig& rc);

struct RunReport {
  json report;
  std::string csv;  // artifact body, empty when the subcommand has none
  int exit_code = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitEmptyHarvest = 2;
inline constexpr int kExitConstraint = 3;
inline constexpr int kExitResource = 4;

// Dispatches, never throws for library errors: they map to exit codes and an
// "error" block. Writes out_path / solutions_path when set.
RunReport run(const RunConfig& rc);

// The report without its "runtime" block (threads, elapsed time).
json comparable(const json& report);

}  // namespace sunit
