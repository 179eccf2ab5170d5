#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mindgraph/harness.hpp"

namespace mindgraph {

/// Stable diagnostic codes for scenario problems.
enum class ConfigErrc {
  syntax,            // E_SYNTAX: line is neither key=value nor a record
  unknown_key,       // E_UNKNOWN_KEY
  duplicate_key,     // E_DUPLICATE_KEY
  missing_field,     // E_MISSING
  out_of_range,      // E_RANGE
  bad_value,         // E_VALUE: unparsable value
  malformed_record,  // E_RECORD: bad rep/sup line
  malformed_tvg,     // E_TVG: referenced TVG file does not parse
  missing_file,      // E_FILE
  mismatch,          // E_MISMATCH: fields disagree with each other
};

[[nodiscard]] std::string_view code_of(ConfigErrc c) noexcept;

struct Diagnostic {
  ConfigErrc code = ConfigErrc::syntax;
  std::size_t line = 0;  // 0 for overrides and whole-file problems
  std::string field;
  std::string message;

  /// "E_RANGE line 3 [mu]: ..."
  [[nodiscard]] std::string to_string() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(Diagnostic d) : std::runtime_error(d.to_string()), diag_(std::move(d)) {}
  [[nodiscard]] const Diagnostic& diagnostic() const noexcept { return diag_; }

 private:
  Diagnostic diag_;
};

using Override = std::pair<std::string, std::string>;

/// Parses "key=value" (for --set). Throws ConfigError(E_SYNTAX).
[[nodiscard]] Override parse_override(std::string_view text);

struct ParseOptions {
  std::filesystem::path base_dir;   // for file(...) topologies
  std::vector<Override> overrides;  // replace file values, applied in order
  bool check_files = true;          // open and parse referenced TVG files
};

/// Strict parse: unknown keys, duplicates, and out-of-range values are errors.
/// Throws ConfigError carrying the first problem found.
[[nodiscard]] ScenarioConfig parse_scenario(std::string_view text, const ParseOptions& options = {});

/// Reads `path` and parses it with base_dir set to its directory.
[[nodiscard]] ScenarioConfig load_scenario(const std::filesystem::path& path,
                                           std::vector<Override> overrides = {});

/// Canonical text form; parse_scenario(emit_scenario(c)) == c (up to base_dir).
[[nodiscard]] std::string emit_scenario(const ScenarioConfig& config);

/// Canonical key/value pairs for the scalar settings, in emission order.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> scenario_settings(const ScenarioConfig& config);

/// Cartesian product of "key=v1,v2,..." axes, first axis slowest.
[[nodiscard]] std::vector<std::vector<Override>> expand_grid(const std::vector<std::string>& axes);

/// Shortest text that reads back to the same double.
[[nodiscard]] std::string format_double(double x);

}  // namespace mindgraph
