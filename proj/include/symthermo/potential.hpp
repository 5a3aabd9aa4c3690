#pragma once

#include <memory>
#include <string>
#include <vector>

#include "symthermo/chart.hpp"
#include "symthermo/dual.hpp"
#include "symthermo/errors.hpp"
#include "symthermo/phase.hpp"

namespace symthermo {

inline std::vector<double> to_std(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Vec to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/**
 * A smooth generating function Phi(q) of a Lagrangian submanifold
 * p = dPhi/dq (a fundamental equation in a fixed representation).
 *
 * The scalar-generic core is exposed at plain doubles and at one and two
 * levels of dual-number nesting, so first derivatives of expressions that
 * *contain* the gradient (process Hamiltonians, implicit transforms) stay
 * exact to round-off. gradient_raw must return exact derivatives of
 * value_raw at every level; the test suite cross-checks it against both
 * dual seeding of value_raw and central finite differences.
 */
class Potential {
 public:
  virtual ~Potential() = default;

  virtual ChartPtr chart() const = 0;
  virtual std::string describe() const = 0;
  std::size_t dim() const { return chart()->dim(); }

  virtual double value_raw(const std::vector<double>& q) const = 0;
  virtual D1 value_raw(const std::vector<D1>& q) const = 0;
  virtual D2 value_raw(const std::vector<D2>& q) const = 0;

  virtual std::vector<double> gradient_raw(const std::vector<double>& q) const = 0;
  virtual std::vector<D1> gradient_raw(const std::vector<D1>& q) const = 0;
  virtual std::vector<D2> gradient_raw(const std::vector<D2>& q) const = 0;

  /// Second derivatives; default differentiates gradient_raw with one dual
  /// level. Returned exactly as computed, unsymmetrized: symmetry is the
  /// isotropy diagnostic the checks measure, not a property enforced here.
  virtual Mat hessian(const Vec& q) const;

  double value(const Vec& q) const { return value_raw(to_std(q)); }
  Vec gradient(const Vec& q) const { return to_eigen(gradient_raw(to_std(q))); }
};

using PotentialPtr = std::shared_ptr<const Potential>;

/// Gradient obtained purely by dual seeding of value_raw, bypassing any
/// analytic gradient_raw override. Second, independent derivative path for
/// the cross-check suite.
Vec dual_gradient(const Potential& phi, const Vec& q);

/**
 * CRTP base turning a single templated evaluation
 *     template <class S> S eval(const std::vector<S>& q) const
 * into the full Potential interface. If the derived class also provides
 *     template <class S> std::vector<S> eval_gradient(const std::vector<S>& q) const
 * it is used as the analytic gradient; otherwise the gradient falls back to
 * dual seeding of eval at one extra nesting level.
 */
template <class Derived>
class PotentialFacade : public Potential {
 public:
  double value_raw(const std::vector<double>& q) const override {
    return self().template eval<double>(check(q));
  }
  D1 value_raw(const std::vector<D1>& q) const override {
    return self().template eval<D1>(check(q));
  }
  D2 value_raw(const std::vector<D2>& q) const override {
    return self().template eval<D2>(check(q));
  }

  std::vector<double> gradient_raw(const std::vector<double>& q) const override {
    return grad_impl<double>(check(q));
  }
  std::vector<D1> gradient_raw(const std::vector<D1>& q) const override {
    return grad_impl<D1>(check(q));
  }
  std::vector<D2> gradient_raw(const std::vector<D2>& q) const override {
    return grad_impl<D2>(check(q));
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }

  template <class S>
  const std::vector<S>& check(const std::vector<S>& q) const {
    if (q.size() != dim()) {
      throw DimensionError(describe() + ": coordinate vector arity differs from chart dimension");
    }
    return q;
  }

  template <class S>
  std::vector<S> grad_impl(const std::vector<S>& q) const {
    if constexpr (requires(const Derived& d) { d.template eval_gradient<S>(q); }) {
      return self().template eval_gradient<S>(q);
    } else {
      const std::size_t n = q.size();
      std::vector<Dual<S>> seeded(n);
      for (std::size_t i = 0; i < n; ++i) seeded[i] = Dual<S>{q[i], constant_like<S>(0.0)};
      std::vector<S> g(n);
      for (std::size_t j = 0; j < n; ++j) {
        seeded[j].b = constant_like<S>(1.0);
        g[j] = self().template eval<Dual<S>>(seeded).b;
        seeded[j].b = constant_like<S>(0.0);
      }
      return g;
    }
  }
};

/// Parameters of the monatomic-style ideal-gas fundamental equation:
/// prefactor A > 0 and per-particle heat capacity C > 0.
struct IdealGasParams {
  double A = 1.0;
  double C = 1.5;

  IdealGasParams() = default;
  IdealGasParams(double A_in, double C_in) : A(A_in), C(C_in) {
    if (!(A > 0.0)) throw DomainError("A", "ideal gas prefactor A must be positive");
    if (!(C > 0.0)) throw DomainError("C", "ideal gas heat capacity C must be positive");
  }

  /// Ratio of specific heats, gamma = (C+1)/C.
  double gamma() const { return (C + 1.0) / C; }
};

/**
 * Ideal-gas internal energy on the hydrostatic chart q = (S, V, N):
 *
 *     E(S,V,N) = A exp(S/(C N)) V^(-1/C) N^(1+1/C),
 *
 * smooth for all real S, V > 0, N > 0. Degree-one homogeneous, so the Euler
 * formula E = TS - PV + muN and the equation of state PV = NT hold exactly.
 */
class IdealGasPotential : public PotentialFacade<IdealGasPotential> {
 public:
  explicit IdealGasPotential(IdealGasParams params = {}) : params_(params) {}

  ChartPtr chart() const override { return Chart::hydrostatic(); }
  std::string describe() const override;
  const IdealGasParams& params() const { return params_; }

  template <class S>
  S eval(const std::vector<S>& q) const {
    check_domain(q);
    const double C = params_.C;
    const S& s = q[0];
    const S& v = q[1];
    const S& n = q[2];
    return params_.A * exp(s / (C * n)) * pow(v, -1.0 / C) * pow(n, 1.0 + 1.0 / C);
  }

  /// (T, -P, mu) = (E/(CN), -E/(CV), E (gamma/N - S/(C N^2))).
  template <class S>
  std::vector<S> eval_gradient(const std::vector<S>& q) const {
    const double C = params_.C;
    const double g = params_.gamma();
    const S e = eval(q);
    const S& s = q[0];
    const S& v = q[1];
    const S& n = q[2];
    std::vector<S> out(3);
    out[0] = e / (C * n);
    out[1] = -e / (C * v);
    out[2] = e * (g / n - s / (C * n * n));
    return out;
  }

  Mat hessian(const Vec& q) const override;

 private:
  template <class S>
  void check_domain(const std::vector<S>& q) const {
    if (!(scalar_value(q[1]) > 0.0))
      throw DomainError("V", "ideal gas requires V > 0, got V = " + std::to_string(scalar_value(q[1])));
    if (!(scalar_value(q[2]) > 0.0))
      throw DomainError("N", "ideal gas requires N > 0, got N = " + std::to_string(scalar_value(q[2])));
  }

  IdealGasParams params_;
};

/// Phi(q) = sum_i c_i q_i. Zero Hessian everywhere: the deliberately
/// degenerate generator used to exercise regularity failure paths.
class LinearPotential : public PotentialFacade<LinearPotential> {
 public:
  explicit LinearPotential(ChartPtr chart = Chart::hydrostatic(), std::vector<double> coeffs = {})
      : chart_(std::move(chart)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(chart_->dim(), 1.0);
    if (coeffs_.size() != chart_->dim()) {
      throw DimensionError("linear potential coefficient arity differs from chart dimension");
    }
  }

  ChartPtr chart() const override { return chart_; }
  std::string describe() const override { return "linear"; }

  template <class S>
  S eval(const std::vector<S>& q) const {
    S acc = constant_like<S>(0.0);
    for (std::size_t i = 0; i < q.size(); ++i) acc += coeffs_[i] * q[i];
    return acc;
  }

  template <class S>
  std::vector<S> eval_gradient(const std::vector<S>& q) const {
    std::vector<S> g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = constant_like<S>(coeffs_[i]);
    return g;
  }

 private:
  ChartPtr chart_;
  std::vector<double> coeffs_;
};

/// A point of the equilibrium-state space: submanifold coordinates plus the
/// generating potential. Construction validates the domain by evaluation.
struct EquilibriumState {
  PotentialPtr potential;
  Vec q;

  EquilibriumState(PotentialPtr phi, Vec q_in) : potential(std::move(phi)), q(std::move(q_in)) {
    if (!potential) throw Error("equilibrium state needs a generating potential");
    detail::require_finite(q, "q");
    (void)potential->value(q);
  }

  PhasePoint embed() const;
};

/// Lift base coordinates onto the Lagrangian submanifold: p = dPhi/dq.
PhasePoint embed(const Potential& phi, const Vec& q);

/// Scaled distance from the submanifold: max_i |p_i - dPhi/dq_i| / max(1,|p_i|).
double onshell_residual(const Potential& phi, const PhasePoint& x);

/// Entropy representation of the ideal gas: S(E,V,N) with E,V,N > 0,
/// the exact inverse of IdealGasPotential in its first slot.
double ideal_gas_entropy(const IdealGasParams& params, double E, double V, double N);

/// (PV - NT) / max(1, |NT|) on the hydrostatic chart.
double eos_residual(const PhasePoint& x);

/// (E - (TS - PV + muN)) / max(1, |E|) on the hydrostatic chart.
double euler_residual(const PhasePoint& x, double E);

}  // namespace symthermo
