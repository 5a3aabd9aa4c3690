#pragma once

#include <iosfwd>
#include <string>

namespace symthermo {

/**
 * Declarative front-ends behind the CLI subcommands. Each reads a JSON
 * scenario file, writes its artifacts under out_dir, logs progress to `log`
 * unless quiet, and returns the process exit code for outcomes that are not
 * exceptional (sweep reports partial failure through its return value).
 *
 * Configuration problems throw ConfigError naming the offending field path;
 * runtime failures (solver breakdown, mid-integration domain violations)
 * throw other Error subclasses. The CLI maps those to exit codes 2 and 3.
 */
int run_simulate(const std::string& config_path, const std::string& out_dir, bool quiet,
                 std::ostream& log);

int run_legendre(const std::string& config_path, const std::string& out_dir, bool quiet,
                 std::ostream& log);

int run_sweep(const std::string& config_path, const std::string& out_dir, bool quiet,
              std::ostream& log);

}  // namespace symthermo
