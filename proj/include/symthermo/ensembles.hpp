#pragma once

#include <string>
#include <vector>

#include "symthermo/dynamics.hpp"
#include "symthermo/potential.hpp"

namespace symthermo {

/// Damped-Newton settings for the implicit conjugate solve, plus the
/// near-singularity threshold on the smallest singular value of the
/// transformed Hessian block.
struct NewtonSettings {
  double tol = 1e-12;
  int max_iters = 50;
  double regularity_threshold = 1e-8;
};

/// The index split of a partial Legendre transform: K lists the base
/// coordinates exchanged for their conjugate momenta, J the rest.
struct LegendreSpec {
  std::size_t n;
  std::vector<std::size_t> K;
  std::vector<std::size_t> J;

  LegendreSpec(std::size_t arity, std::vector<std::size_t> transformed);
};

/// helmholtz -> K={S}, enthalpy -> K={V}, gibbs -> K={S,V}, on the
/// hydrostatic chart ordering (S, V, N).
LegendreSpec hydrostatic_preset(const std::string& name);

struct LegendreResult {
  double psi;
  Vec q_K;
  int iterations;
  double residual;
};

/**
 * Psi(q_J, p_K) = Phi(q) - p_K . q_K with q_K recovered from
 * p_K = dPhi/dq_K by damped Newton from the supplied guess.
 *
 * Throws RegularityError when the Hessian K-block is near-singular and
 * ConvergenceError when the iteration stalls or runs out.
 */
LegendreResult legendre_eval(const Potential& phi, const LegendreSpec& spec, const Vec& q_J,
                             const Vec& p_K, const Vec& q_K_guess,
                             const NewtonSettings& settings = {});

/// Smallest singular value of the Hessian K-block at q; +infinity for K
/// empty. Values below settings.regularity_threshold mean the transform is
/// not invertible there.
double regularity_indicator(const Potential& phi, const LegendreSpec& spec, const Vec& q);

/**
 * The transform as a Potential in its own right, over the mixed chart
 * (q_J, p_K). Gradients follow from the solved point: dPsi/dq_J = dPhi/dq_J
 * and dPsi/dp_K = -q_K, so every dual level recurses into the source
 * potential rather than needing deeper dual nesting. The Hessian is
 * assembled from the source Hessian by block elimination. Evaluation is
 * stateless: every call solves from the configured default guess.
 */
class TransformedPotential final : public Potential {
 public:
  TransformedPotential(PotentialPtr source, LegendreSpec spec, Vec default_guess,
                       NewtonSettings settings = {});

  ChartPtr chart() const override { return chart_; }
  std::string describe() const override;
  const Potential& source() const { return *source_; }
  const LegendreSpec& spec() const { return spec_; }

  double value_raw(const std::vector<double>& y) const override;
  D1 value_raw(const std::vector<D1>& y) const override;
  D2 value_raw(const std::vector<D2>& y) const override;

  std::vector<double> gradient_raw(const std::vector<double>& y) const override;
  std::vector<D1> gradient_raw(const std::vector<D1>& y) const override;
  std::vector<D2> gradient_raw(const std::vector<D2>& y) const override;

  Mat hessian(const Vec& y) const override;

 private:
  template <class S>
  S value_impl(const std::vector<S>& y) const;
  template <class S>
  std::vector<S> gradient_impl(const std::vector<S>& y) const;

  PotentialPtr source_;
  LegendreSpec spec_;
  Vec default_guess_;
  NewtonSettings settings_;
  ChartPtr chart_;
};

/**
 * Tangent-map consistency of a Legendre change of chart along a process:
 * integrates q-dot = X(q) on the base chart, maps every sample through
 * (q_J, p_K = dPhi/dq_K), and compares the mapped trajectory's central-
 * difference velocity against the analytic pushforward, whose momentum
 * components are the chain rule through all base coordinates,
 * d/dt Phi_k(q(t)) = sum_m Hess(k,m) X^m(q). Returns the max scaled defect
 * over interior samples.
 *
 * Throws RegularityError (with the sample index) if the Hessian K-block
 * degenerates along the trajectory.
 */
double pushforward_check(const Potential& phi, const ProcessSpec& X, const LegendreSpec& spec,
                         const Vec& q0, double t_end, double dt,
                         const NewtonSettings& settings = {});

}  // namespace symthermo
