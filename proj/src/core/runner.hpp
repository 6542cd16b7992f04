#pragma once

#include <string>

#include <json.hpp>

namespace sc {

// Exit codes: 0 success, 1 usage/admissibility error, 2 theorem-violation
// alarm from a `verify` run (bound exceeds the converged oracle count).
struct RunOutcome {
  int exit_code = 0;
  std::string report_path;
  std::string message; // diagnostic on failure
};

// Executes one experiment config (see README for the schema), writing
// report.json plus command-specific CSVs into the output directory.
// `output_override` and `seed_override` (>= 0) replace the config fields.
RunOutcome run_config(const nlohmann::json& config, const std::string& output_override = "",
                      long long seed_override = -1);

RunOutcome run_config_file(const std::string& path, const std::string& output_override = "",
                           long long seed_override = -1);

// JSON serialization with floats at 17 significant digits (round-trip exact
// for doubles) and sorted object keys; reports must be byte-identical across
// reruns of the same config + seed.
std::string dump_json_17(const nlohmann::json& j, int indent = 2);

// "%.17g" for CSV cells.
std::string format_double(double v);

} // namespace sc
