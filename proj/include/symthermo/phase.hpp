#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "symthermo/chart.hpp"
#include "symthermo/errors.hpp"

namespace symthermo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace detail {

inline void require_finite(const Vec& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw NonFiniteError(std::string(what) + " has a non-finite component",
                           static_cast<int>(i));
    }
  }
}

}  // namespace detail

/// A point (q, p) of the canonical phase space T*Q, tagged with its chart.
/// Immutable after construction; all components finite.
class PhasePoint {
 public:
  PhasePoint(ChartPtr chart, Vec q, Vec p)
      : chart_(std::move(chart)), q_(std::move(q)), p_(std::move(p)) {
    if (!chart_) throw ChartMismatchError("phase point needs a chart");
    if (q_.size() != static_cast<Eigen::Index>(chart_->dim()) ||
        p_.size() != static_cast<Eigen::Index>(chart_->dim())) {
      throw DimensionError("phase point coordinate arity differs from chart dimension");
    }
    detail::require_finite(q_, "q");
    detail::require_finite(p_, "p");
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return chart_->dim(); }
  const Vec& q() const { return q_; }
  const Vec& p() const { return p_; }

  /// Momentum in display convention: physical_k = sign_k * p_k.
  double p_display(std::size_t k) const {
    return chart_->p_display_sign(k) * p_[static_cast<Eigen::Index>(k)];
  }

 private:
  ChartPtr chart_;
  Vec q_;
  Vec p_;
};

/// A tangent vector (dq, dp) attached to a base phase point.
class TangentVector {
 public:
  TangentVector(PhasePoint base, Vec dq, Vec dp)
      : base_(std::move(base)), dq_(std::move(dq)), dp_(std::move(dp)) {
    if (dq_.size() != static_cast<Eigen::Index>(base_.dim()) ||
        dp_.size() != static_cast<Eigen::Index>(base_.dim())) {
      throw DimensionError("tangent vector block arity differs from base point dimension");
    }
  }

  const PhasePoint& base() const { return base_; }
  std::size_t dim() const { return base_.dim(); }
  const Vec& dq() const { return dq_; }
  const Vec& dp() const { return dp_; }

 private:
  PhasePoint base_;
  Vec dq_;
  Vec dp_;
};

}  // namespace symthermo
