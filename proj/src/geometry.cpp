#include "symthermo/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace symthermo {

std::pair<Vec, Vec> Hamiltonian::gradient(const PhasePoint& x) const {
  require_same_chart(chart(), x.chart());
  const auto n = static_cast<Eigen::Index>(dim());
  std::vector<D1> qs(static_cast<std::size_t>(n)), ps(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    qs[static_cast<std::size_t>(i)] = D1{x.q()[i], 0.0};
    ps[static_cast<std::size_t>(i)] = D1{x.p()[i], 0.0};
  }
  Vec dq(n), dp(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto sj = static_cast<std::size_t>(j);
    qs[sj].b = 1.0;
    dq[j] = value_raw(qs, ps).b;
    qs[sj].b = 0.0;
    ps[sj].b = 1.0;
    dp[j] = value_raw(qs, ps).b;
    ps[sj].b = 0.0;
  }
  return {dq, dp};
}

double canonical_pairing(const TangentVector& u, const TangentVector& v) {
  require_same_chart(u.base().chart(), v.base().chart());
  if (u.base().q() != v.base().q() || u.base().p() != v.base().p()) {
    throw Error("canonical pairing needs tangent vectors at the same base point");
  }
  return u.dq().dot(v.dp()) - u.dp().dot(v.dq());
}

TangentVector hamiltonian_field(const Hamiltonian& H, const PhasePoint& x) {
  auto [dHdq, dHdp] = H.gradient(x);
  for (Eigen::Index i = 0; i < dHdq.size(); ++i) {
    if (!std::isfinite(dHdq[i]) || !std::isfinite(dHdp[i])) {
      throw NonFiniteError(H.describe() + ": non-finite derivative", static_cast<int>(i));
    }
  }
  return TangentVector(x, dHdp, -dHdq);
}

double directional_derivative(const Hamiltonian& H, const TangentVector& u) {
  auto [dHdq, dHdp] = H.gradient(u.base());
  return dHdq.dot(u.dq()) + dHdp.dot(u.dp());
}

Mat canonical_omega(Eigen::Index n) {
  Mat omega = Mat::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = Mat::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return omega;
}

double symplectic_defect(const FlowMap& flow, const PhasePoint& x, double h) {
  const auto n = static_cast<Eigen::Index>(x.dim());
  Vec z(2 * n);
  z.head(n) = x.q();
  z.tail(n) = x.p();

  const auto apply = [&](const Vec& w) -> Vec {
    const PhasePoint y = flow(PhasePoint(x.chart(), w.head(n), w.tail(n)));
    Vec out(2 * n);
    out.head(n) = y.q();
    out.tail(n) = y.p();
    return out;
  };

  Mat jac(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const double hi = h * std::max(1.0, std::abs(z[i]));
    Vec zp = z, zm = z;
    zp[i] += hi;
    zm[i] -= hi;
    jac.col(i) = (apply(zp) - apply(zm)) / (2.0 * hi);
  }

  const Mat omega = canonical_omega(n);
  return (jac.transpose() * omega * jac - omega).cwiseAbs().maxCoeff();
}

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double hi = h * std::max(1.0, std::abs(x[i]));
    Vec xp = x, xm = x;
    xp[i] += hi;
    xm[i] -= hi;
    g[i] = (f(xp) - f(xm)) / (2.0 * hi);
  }
  return g;
}

}  // namespace symthermo
