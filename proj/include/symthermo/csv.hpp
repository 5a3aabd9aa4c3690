#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "symthermo/dynamics.hpp"

namespace symthermo {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

inline constexpr char kTrajectoryCsvHeader[] = "t,S,V,N,T,P,mu,E,H,onshell,eos,euler";

/// One row per sample: affine parameter, base coordinates, display momenta
/// (P, not -P), energy from the potential, Hamiltonian value, and the three
/// equilibrium residuals. Full-precision round-trippable decimal text.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Potential& phi);

/// Parses a comma-separated numeric table as written by this module.
/// Returns rows of doubles; the header line goes to *header when given.
std::vector<std::vector<double>> read_csv(std::istream& is, std::string* header = nullptr);

}  // namespace symthermo
