#include "symthermo/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symthermo {

Mat Potential::hessian(const Vec& q) const {
  const auto n = static_cast<Eigen::Index>(dim());
  std::vector<D1> seeded(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) seeded[static_cast<std::size_t>(i)] = D1{q[i], 0.0};
  Mat h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    seeded[static_cast<std::size_t>(j)].b = 1.0;
    const std::vector<D1> g = gradient_raw(seeded);
    for (Eigen::Index i = 0; i < n; ++i) h(i, j) = g[static_cast<std::size_t>(i)].b;
    seeded[static_cast<std::size_t>(j)].b = 0.0;
  }
  return h;
}

Vec dual_gradient(const Potential& phi, const Vec& q) {
  const auto n = q.size();
  std::vector<D1> seeded(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) seeded[static_cast<std::size_t>(i)] = D1{q[i], 0.0};
  Vec g(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    seeded[static_cast<std::size_t>(j)].b = 1.0;
    g[j] = phi.value_raw(seeded).b;
    seeded[static_cast<std::size_t>(j)].b = 0.0;
  }
  return g;
}

std::string IdealGasPotential::describe() const {
  std::ostringstream os;
  os << "ideal-gas energy (A=" << params_.A << ", C=" << params_.C << ")";
  return os.str();
}

Mat IdealGasPotential::hessian(const Vec& q) const {
  const double C = params_.C;
  const double g = params_.gamma();
  const double e = value(q);
  const double s = q[0];
  const double v = q[1];
  const double n = q[2];
  const double mu = e * (g / n - s / (C * n * n));
  Mat h(3, 3);
  h(0, 0) = e / (C * C * n * n);
  h(0, 1) = -e / (C * C * n * v);
  h(0, 2) = mu / (C * n) - e / (C * n * n);
  h(1, 1) = (1.0 / C) * (1.0 / C + 1.0) * e / (v * v);
  h(1, 2) = -mu / (C * v);
  h(2, 2) = mu * mu / e + e * (2.0 * s / (C * n * n * n) - g / (n * n));
  h(1, 0) = h(0, 1);
  h(2, 0) = h(0, 2);
  h(2, 1) = h(1, 2);
  return h;
}

PhasePoint EquilibriumState::embed() const { return symthermo::embed(*potential, q); }

PhasePoint embed(const Potential& phi, const Vec& q) {
  return PhasePoint(phi.chart(), q, phi.gradient(q));
}

double onshell_residual(const Potential& phi, const PhasePoint& x) {
  require_same_chart(phi.chart(), x.chart());
  const Vec g = phi.gradient(x.q());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double scale = std::max(1.0, std::abs(x.p()[i]));
    worst = std::max(worst, std::abs(x.p()[i] - g[i]) / scale);
  }
  return worst;
}

double ideal_gas_entropy(const IdealGasParams& params, double E, double V, double N) {
  if (!(E > 0.0)) throw DomainError("E", "entropy representation requires E > 0");
  if (!(V > 0.0)) throw DomainError("V", "entropy representation requires V > 0");
  if (!(N > 0.0)) throw DomainError("N", "entropy representation requires N > 0");
  const double C = params.C;
  return C * N * std::log(E * std::pow(V, 1.0 / C) * std::pow(N, -1.0 - 1.0 / C) / params.A);
}

namespace {

void require_hydrostatic(const PhasePoint& x) {
  require_same_chart(Chart::hydrostatic(), x.chart());
}

}  // namespace

double eos_residual(const PhasePoint& x) {
  require_hydrostatic(x);
  const double S = x.q()[0], V = x.q()[1], N = x.q()[2];
  (void)S;
  const double T = x.p()[0];
  const double P = -x.p()[1];
  return (P * V - N * T) / std::max(1.0, std::abs(N * T));
}

double euler_residual(const PhasePoint& x, double E) {
  require_hydrostatic(x);
  const double S = x.q()[0], V = x.q()[1], N = x.q()[2];
  const double T = x.p()[0];
  const double P = -x.p()[1];
  const double mu = x.p()[2];
  return (E - (T * S - P * V + mu * N)) / std::max(1.0, std::abs(E));
}

}  // namespace symthermo
