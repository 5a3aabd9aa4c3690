#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "symthermo/chart.hpp"
#include "symthermo/dual.hpp"
#include "symthermo/phase.hpp"
#include "symthermo/potential.hpp"

namespace symthermo {

/**
 * A smooth scalar function H(q, p) on phase space, the generator of a flow.
 *
 * Evaluation is exposed at plain doubles and at one dual level; first
 * derivatives in all 2n coordinates are exact via dual seeding.
 */
class Hamiltonian {
 public:
  virtual ~Hamiltonian() = default;

  virtual ChartPtr chart() const = 0;
  virtual std::string describe() const = 0;
  std::size_t dim() const { return chart()->dim(); }

  virtual double value_raw(const std::vector<double>& q, const std::vector<double>& p) const = 0;
  virtual D1 value_raw(const std::vector<D1>& q, const std::vector<D1>& p) const = 0;

  double value(const PhasePoint& x) const {
    require_same_chart(chart(), x.chart());
    return value_raw(to_std(x.q()), to_std(x.p()));
  }

  /// Exact (dH/dq, dH/dp) at x, one dual seeding per coordinate.
  std::pair<Vec, Vec> gradient(const PhasePoint& x) const;
};

using HamiltonianPtr = std::shared_ptr<const Hamiltonian>;

/// CRTP base mapping a single templated evaluation
///     template <class S> S eval(const std::vector<S>& q, const std::vector<S>& p) const
/// onto the Hamiltonian interface.
template <class Derived>
class HamiltonianFacade : public Hamiltonian {
 public:
  double value_raw(const std::vector<double>& q, const std::vector<double>& p) const override {
    check(q, p);
    return self().template eval<double>(q, p);
  }
  D1 value_raw(const std::vector<D1>& q, const std::vector<D1>& p) const override {
    check(q, p);
    return self().template eval<D1>(q, p);
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }

  template <class S>
  void check(const std::vector<S>& q, const std::vector<S>& p) const {
    if (q.size() != dim() || p.size() != dim()) {
      throw DimensionError(describe() + ": phase coordinate arity differs from chart dimension");
    }
  }
};

}  // namespace symthermo
