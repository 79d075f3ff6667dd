// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "freemoe/cli/run.hpp"

namespace freemoe::cli {

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-group channel bounds: verification suites and the additivity demo", "freemoe"};
  RunConfig config;
  std::size_t samples = 0;
  unsigned radius = 0;
  std::string precision = "exact";
  std::string format = "json";
  std::string log_base = "e";

  app.add_option("command", config.command, "Suite to run")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("--N", config.N, "Number of Kraus unitaries (generators)");
  app.add_option("--k", config.k, "Tensor power / arity");
  auto* samples_opt = app.add_option("--samples", samples,
                                     "Random instances (optimizer restarts for minimize)");
  app.add_option("--seed", config.seed, "Root seed; sample i uses a hash of (seed, i)");
  auto* radius_opt = app.add_option("--radius", radius, "Maximal word length per component");
  app.add_option("--moment-budget", config.moment_budget,
                 "Largest support of any moment power before the schedule is truncated");
  app.add_option("--precision", precision, "Coefficient field for algebra suites")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--log-base", log_base, "Entropy units")->check(CLI::IsMember({"e", "2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "freemoe: " << e.what() << '\n';
    return exit_config;
  }
  if (samples_opt->count() > 0) {
    config.samples = samples;
  }
  if (radius_opt->count() > 0) {
    config.radius = radius;
  }
  config.precision = precision == "exact" ? Precision::exact : Precision::floating;
  config.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
  config.log_base = log_base == "2" ? LogBase::two : LogBase::e;

  try {
    const RunResult result = run(config);
    out << render(result, config.format);
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "freemoe: configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const ResourceLimitError& e) {
    err << "freemoe: resource limit: " << e.what() << '\n';
    return exit_resource;
  } catch (const std::invalid_argument& e) {
    err << "freemoe: configuration error: " << e.what() << '\n';
    return exit_config;
  }
}

}  // namespace freemoe::cli
