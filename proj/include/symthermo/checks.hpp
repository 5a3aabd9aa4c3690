#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace symthermo {

/// One executable invariant: pass iff `measured <relation> threshold`.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";
  bool pass = false;
  std::string note;
};

/// Runs a named invariant suite (geometry, potentials, ensembles, dynamics,
/// or all). Deterministic for a fixed seed; throws ConfigError on an unknown
/// suite name. A check that throws is reported failed with the message as
/// its note rather than aborting the run. The extra suite "selftest"
/// (excluded from "all") contains one deliberately failing check so the
/// failure path of the reporter stays covered.
std::vector<CheckResult> run_check_suite(const std::string& suite, std::uint64_t seed);

/// One aligned line per check plus a closing tally; returns true iff every
/// check passed.
bool report_checks(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace symthermo
