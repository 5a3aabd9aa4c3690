#include "symthermo/csv.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

namespace symthermo {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Potential& phi) {
  os << kTrajectoryCsvHeader << "\n";
  const Hamiltonian& H = *traj.hamiltonian;
  for (const auto& sample : traj.samples) {
    const PhasePoint& x = sample.x;
    const double e = phi.value(x.q());
    const double row[] = {sample.t,        x.q()[0],        x.q()[1],
                          x.q()[2],        x.p_display(0),  x.p_display(1),
                          x.p_display(2),  e,               H.value(x),
                          onshell_residual(phi, x), eos_residual(x), euler_residual(x, e)};
    for (std::size_t i = 0; i < sizeof(row) / sizeof(row[0]); ++i) {
      if (i) os << ',';
      os << format_double(row[i]);
    }
    os << "\n";
  }
}

std::vector<std::vector<double>> read_csv(std::istream& is, std::string* header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (first) {
      first = false;
      if (header) *header = line;
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{}) throw Error("malformed numeric field in CSV line: " + line);
      row.push_back(v);
      if (next == end) break;
      if (*next != ',') throw Error("expected ',' in CSV line: " + line);
      p = next + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace symthermo
