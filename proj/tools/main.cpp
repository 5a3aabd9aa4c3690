#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "symthermo/checks.hpp"
#include "symthermo/errors.hpp"
#include "symthermo/scenario.hpp"

// Exit codes: 0 success, 1 failed invariant check, 2 configuration or usage
// error, 3 runtime failure (solver breakdown, integration error).
int main(int argc, char** argv) {
  CLI::App app{"Equilibrium thermodynamics as Hamiltonian flows on canonical phase space"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::uint64_t seed = 20260814ULL;
  bool quiet = false;
  app.add_option("--out-dir", out_dir, "Directory artifacts are written under (created if missing)")
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for the randomized invariant checks")
      ->capture_default_str();
  app.add_flag("--quiet", quiet, "Suppress progress output");

  std::string sim_config;
  std::string suite;
  std::string leg_config;
  std::string sweep_config;

  CLI::App* sim =
      app.add_subcommand("simulate", "Integrate a configured process; writes CSV and a report");
  sim->add_option("config", sim_config, "Scenario config file (JSON)")->required();

  CLI::App* chk = app.add_subcommand("check", "Run an invariant suite and report pass/fail");
  chk->add_option("suite", suite, "geometry | potentials | ensembles | dynamics | all")
      ->required();

  CLI::App* leg = app.add_subcommand(
      "legendre", "Evaluate a partial Legendre transform over points or a grid; writes CSV");
  leg->add_option("config", leg_config, "Transform config file (JSON)")->required();

  CLI::App* swp =
      app.add_subcommand("sweep", "Run a scenario across a parameter range; writes a summary");
  swp->add_option("config", sweep_config, "Sweep config file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return 2;
  }

  try {
    try {
      std::filesystem::create_directories(out_dir);
    } catch (const std::filesystem::filesystem_error& e) {
      std::cerr << "config error [out-dir]: cannot create '" << out_dir << "': " << e.what()
                << "\n";
      return 2;
    }
    if (sim->parsed()) return symthermo::run_simulate(sim_config, out_dir, quiet, std::cout);
    if (leg->parsed()) return symthermo::run_legendre(leg_config, out_dir, quiet, std::cout);
    if (swp->parsed()) return symthermo::run_sweep(sweep_config, out_dir, quiet, std::cout);

    const auto results = symthermo::run_check_suite(suite, seed);
    std::ostringstream report;
    const bool ok = symthermo::report_checks(results, report);
    if (!quiet) std::cout << report.str();
    std::ofstream file(std::filesystem::path(out_dir) / ("check_" + suite + ".txt"),
                       std::ios::binary);
    file << report.str();
    return ok ? 0 : 1;
  } catch (const symthermo::ConfigError& e) {
    std::cerr << "config error [" << e.field() << "]: " << e.what() << "\n";
    return 2;
  } catch (const symthermo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
