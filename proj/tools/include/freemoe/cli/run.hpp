// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "freemoe/serialize.hpp"

namespace freemoe::cli {

enum class Precision { exact, floating };
enum class Format { json, csv, text };
enum class LogBase { e, two };

inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_resource = 3;

/// Invalid command name or out-of-range option.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  /// Real-valued so demo-violation can take N = 1e8; every other command
  /// requires an integer in [2, 2^20].
  double N = 2;
  unsigned k = 1;
  /// Defaults per command: 8 optimizer restarts for minimize, 100 otherwise.
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  /// Defaults per command: 2 for minimize, 3 otherwise.
  std::optional<unsigned> radius;
  std::size_t moment_budget = 200'000;
  Precision precision = Precision::exact;
  Format format = Format::json;
  LogBase log_base = LogBase::e;

  std::size_t sample_count() const;
  unsigned support_radius() const;
};

struct RunResult {
  int exit_code = exit_ok;
  /// {command, config, passes, failures: [{input, observed, bound}], summary, samples}
  Json report;
  /// Header plus one row per sample.
  std::string csv;
  std::string text;
};

const std::vector<std::string>& commands();

/// Throws ConfigError describing the first offending field.
void validate(const RunConfig& config);

/// Runs one suite. Throws ConfigError or ResourceLimitError.
RunResult run(const RunConfig& config);

/// The report in the configured format, newline-terminated.
std::string render(const RunResult& result, Format format);

Json config_to_json(const RunConfig& config);

/// Parses argv, runs and writes the report to `out`; diagnostics go to
/// `err`. Returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace freemoe::cli
