#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symthermo/expression.hpp"
#include "symthermo/geometry.hpp"
#include "symthermo/hamiltonian.hpp"
#include "symthermo/potential.hpp"

namespace symthermo {

/// A process vector field on the submanifold chart: n smooth components
/// X^i(q) given as expressions over the chart's base coordinate names.
class ProcessSpec {
 public:
  ProcessSpec(ChartPtr chart, std::vector<std::string> components);

  static ProcessSpec zero(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return exprs_.size(); }
  const std::vector<std::string>& sources() const { return sources_; }
  std::string describe() const;

  template <class S>
  std::vector<S> eval(const std::vector<S>& q) const {
    std::vector<S> out(exprs_.size());
    for (std::size_t i = 0; i < exprs_.size(); ++i) out[i] = eval_expr<S>(*exprs_[i], q);
    return out;
  }

  Vec eval(const Vec& q) const { return to_eigen(eval(to_std(q))); }

 private:
  ChartPtr chart_;
  std::vector<std::string> sources_;
  std::vector<ExprPtr> exprs_;
};

/// H = TS + muN - gamma E(S,V,N) + Lambda: simultaneous heating and particle
/// injection at fixed volume. Equal to Lambda on the equilibrium submanifold.
class IsochoricHamiltonian : public HamiltonianFacade<IsochoricHamiltonian> {
 public:
  IsochoricHamiltonian(IdealGasParams params, double lambda)
      : params_(params), gas_(params), lambda_(lambda) {}

  ChartPtr chart() const override { return Chart::hydrostatic(); }
  std::string describe() const override;
  const IdealGasParams& params() const { return params_; }
  double lambda() const { return lambda_; }

  template <class S>
  S eval(const std::vector<S>& q, const std::vector<S>& p) const {
    const S e = gas_.eval(q);
    return p[0] * q[0] + p[2] * q[2] - params_.gamma() * e + lambda_;
  }

 private:
  IdealGasParams params_;
  IdealGasPotential gas_;
  double lambda_;
};

/// H = TS - NT + muN - E(S,V,N) + Lambda: particle injection at fixed
/// temperature and volume. Equal to Lambda on the submanifold.
class IsothermalIsochoricHamiltonian : public HamiltonianFacade<IsothermalIsochoricHamiltonian> {
 public:
  IsothermalIsochoricHamiltonian(IdealGasParams params, double lambda)
      : params_(params), gas_(params), lambda_(lambda) {}

  ChartPtr chart() const override { return Chart::hydrostatic(); }
  std::string describe() const override;
  const IdealGasParams& params() const { return params_; }
  double lambda() const { return lambda_; }

  template <class S>
  S eval(const std::vector<S>& q, const std::vector<S>& p) const {
    const S e = gas_.eval(q);
    return p[0] * q[0] - q[2] * p[0] + p[2] * q[2] - e + lambda_;
  }

 private:
  IdealGasParams params_;
  IdealGasPotential gas_;
  double lambda_;
};

/// H = (p - dPhi/dq) . X(q) + Lambda for an arbitrary process field X on the
/// base chart. Vanishing first factor on-shell makes H = Lambda there, and
/// the q-equations reduce to q-dot = X(q).
class GeneralProcessHamiltonian : public HamiltonianFacade<GeneralProcessHamiltonian> {
 public:
  GeneralProcessHamiltonian(PotentialPtr phi, ProcessSpec process, double lambda);

  ChartPtr chart() const override { return phi_->chart(); }
  std::string describe() const override;
  const Potential& potential() const { return *phi_; }
  const ProcessSpec& process() const { return process_; }
  double lambda() const { return lambda_; }

  template <class S>
  S eval(const std::vector<S>& q, const std::vector<S>& p) const {
    const std::vector<S> g = phi_->gradient_raw(q);
    const std::vector<S> x = process_.eval(q);
    S acc = constant_like<S>(lambda_);
    for (std::size_t i = 0; i < q.size(); ++i) acc += (p[i] - g[i]) * x[i];
    return acc;
  }

 private:
  PotentialPtr phi_;
  ProcessSpec process_;
  double lambda_;
};

/// H = a N^2/V + b N^4/(3V^3): a system-to-system map between ideal-gas
/// equilibrium spaces. Depends on (V, N) only, so S, V, N, T stay fixed and
/// the momenta p_V, mu drift at constant rates.
class InteractingMapHamiltonian : public HamiltonianFacade<InteractingMapHamiltonian> {
 public:
  InteractingMapHamiltonian(double a, double b, double lambda = 0.0)
      : a_(a), b_(b), lambda_(lambda) {}

  ChartPtr chart() const override { return Chart::hydrostatic(); }
  std::string describe() const override;
  double a() const { return a_; }
  double b() const { return b_; }
  double lambda() const { return lambda_; }

  template <class S>
  S eval(const std::vector<S>& q, const std::vector<S>& p) const {
    (void)p;
    const S& v = q[1];
    const S& n = q[2];
    if (scalar_value(v) == 0.0)
      throw DomainError("V", "interacting-map Hamiltonian is undefined at V = 0");
    return a_ * (n * n) / v + (b_ / 3.0) * (n * n * n * n) / (v * v * v) + lambda_;
  }

 private:
  double a_;
  double b_;
  double lambda_;
};

HamiltonianPtr isochoric_hamiltonian(IdealGasParams params, double lambda);
HamiltonianPtr isothermal_isochoric_hamiltonian(IdealGasParams params, double lambda);
HamiltonianPtr general_process_hamiltonian(PotentialPtr phi, ProcessSpec process, double lambda);
HamiltonianPtr interacting_map_hamiltonian(double a, double b, double lambda = 0.0);

/// Exact isochoric solution: (S0 e^t, V0, N0 e^t; T0 e^(t/C), P0 e^(gamma t),
/// mu0 e^(t/C)), with E(t) = E0 e^(gamma t). Returns the phase point and E.
std::pair<PhasePoint, double> closed_form_isochoric(const PhasePoint& x0,
                                                    const IdealGasParams& params, double t);

/// Exact isothermal-isochoric solution: ((S0 - N0 t) e^t, V0, N0 e^t;
/// T0, P0 e^t, mu0 + T0 t), with E(t) = E0 e^t.
std::pair<PhasePoint, double> closed_form_isothermal_isochoric(const PhasePoint& x0,
                                                               const IdealGasParams& params,
                                                               double t);

/// Exact interacting-map solution: base coordinates and T frozen,
/// P(t) = P0 - (a N^2/V^2 + b N^4/V^4) t, mu(t) = mu0 - (2aN/V + 4bN^3/(3V^3)) t.
/// e0 is the (constant) energy of the frozen base point.
std::pair<PhasePoint, double> closed_form_interacting(const PhasePoint& x0, double e0, double a,
                                                      double b, double t);

struct IntegratorConfig {
  enum class Method { ImplicitMidpoint, RK4 };

  Method method = Method::ImplicitMidpoint;
  double dt = 1e-3;
  long steps = 1000;
  double fixed_point_tol = 1e-13;
  int max_fixed_point_iters = 100;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  std::string describe() const;

  static Method method_from_string(const std::string& name);
};

struct TrajectorySample {
  double t;
  PhasePoint x;
};

/// Parameter-sampled flow line, t strictly increasing from 0, together with
/// the generating Hamiltonian and integrator settings as provenance.
struct Trajectory {
  HamiltonianPtr hamiltonian;
  IntegratorConfig config;
  std::vector<TrajectorySample> samples;

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

/// One step of the configured method from x. Implicit midpoint solves
/// x' = x + dt X_H((x+x')/2) by fixed-point iteration.
PhasePoint integrator_step(const Hamiltonian& H, const PhasePoint& x, const IntegratorConfig& cfg);

/// Integrates steps * dt of flow, keeping every sample. Fixed-point failures
/// and mid-step domain violations surface as StepError with the step index
/// and the last completed parameter value.
Trajectory integrate(HamiltonianPtr H, const PhasePoint& x0, const IntegratorConfig& cfg);

/// Closed-form reference: t -> (phase point, energy).
using ClosedFormMap = std::function<std::pair<PhasePoint, double>(double)>;

struct DiagnosticsReport {
  double max_hamiltonian_drift = 0.0;  // |H(x_t) - H(x_0)| / max(1, |H(x_0)|)
  double max_onshell = 0.0;
  double max_eos = 0.0;
  double max_euler = 0.0;
  double final_symplectic_defect = 0.0;
  bool closed_form_compared = false;
  /// max over samples of |component - reference| / max(1, |reference|),
  /// keyed S, V, N, T, P, mu, E.
  std::vector<std::pair<std::string, double>> closed_form_deviation;

  std::string summary() const;
};

DiagnosticsReport diagnose(const Trajectory& traj, const Potential& phi,
                           const ClosedFormMap& closed_form = {});

}  // namespace symthermo
