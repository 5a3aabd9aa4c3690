#include "symthermo/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symthermo {

LegendreSpec::LegendreSpec(std::size_t arity, std::vector<std::size_t> transformed)
    : n(arity), K(std::move(transformed)) {
  if (n < 1) throw DimensionError("legendre spec needs arity >= 1");
  std::sort(K.begin(), K.end());
  if (std::adjacent_find(K.begin(), K.end()) != K.end()) {
    throw DimensionError("legendre index set K has a repeated index");
  }
  for (std::size_t k : K) {
    if (k >= n) throw DimensionError("legendre index set K has an index out of range");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::binary_search(K.begin(), K.end(), i)) J.push_back(i);
  }
}

LegendreSpec hydrostatic_preset(const std::string& name) {
  if (name == "helmholtz") return LegendreSpec(3, {0});
  if (name == "enthalpy") return LegendreSpec(3, {1});
  if (name == "gibbs") return LegendreSpec(3, {0, 1});
  throw ConfigError("transform.preset",
                    "unknown ensemble preset '" + name + "' (helmholtz, enthalpy, gibbs)");
}

namespace {

void flatten(double x, std::vector<double>& out) { out.push_back(x); }
template <class T>
void flatten(const Dual<T>& x, std::vector<double>& out) {
  flatten(x.a, out);
  flatten(x.b, out);
}

template <class S>
double value_part(const S& x) {
  return scalar_value(x);
}

/// q with the J slots from q_J and the K slots from u.
template <class S>
std::vector<S> assemble(const LegendreSpec& spec, const std::vector<S>& q_J,
                        const std::vector<S>& u) {
  std::vector<S> q(spec.n);
  for (std::size_t i = 0; i < spec.J.size(); ++i) q[spec.J[i]] = q_J[i];
  for (std::size_t i = 0; i < spec.K.size(); ++i) q[spec.K[i]] = u[i];
  return q;
}

Mat k_block(const LegendreSpec& spec, const Mat& hess) {
  const auto m = static_cast<Eigen::Index>(spec.K.size());
  Mat b(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      b(r, c) = hess(static_cast<Eigen::Index>(spec.K[static_cast<std::size_t>(r)]),
                     static_cast<Eigen::Index>(spec.K[static_cast<std::size_t>(c)]));
  return b;
}

/// Scaled residual of p_K = dPhi/dq_K at candidate u; +inf outside the
/// domain, on non-finite values, or when a nested conjugate solve cannot
/// evaluate the candidate, all of which make the damping loop retreat.
double scaled_residual(const Potential& phi, const LegendreSpec& spec, const Vec& q_J,
                       const Vec& p_K, const Vec& u, Vec* r_out) {
  try {
    const Vec q = to_eigen(assemble(spec, to_std(q_J), to_std(u)));
    const Vec g = phi.gradient(q);
    double worst = 0.0;
    Vec r(static_cast<Eigen::Index>(spec.K.size()));
    for (std::size_t i = 0; i < spec.K.size(); ++i) {
      const auto ei = static_cast<Eigen::Index>(i);
      r[ei] = g[static_cast<Eigen::Index>(spec.K[i])] - p_K[ei];
      if (!std::isfinite(r[ei])) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, std::abs(r[ei]) / std::max(1.0, std::abs(p_K[ei])));
    }
    if (r_out) *r_out = r;
    return worst;
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  } catch (const ConvergenceError&) {
    // Nested transform: the inner conjugate solve has no solution at this
    // candidate, so the composed potential is undefined there.
    return std::numeric_limits<double>::infinity();
  } catch (const RegularityError&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct NewtonOutcome {
  Vec u;
  Mat k_hessian;  // at the solution
  int iterations = 0;
  double residual = 0.0;
};

NewtonOutcome newton_solve(const Potential& phi, const LegendreSpec& spec, const Vec& q_J,
                           const Vec& p_K, const Vec& guess, const NewtonSettings& st) {
  NewtonOutcome out;
  out.u = guess;
  const auto m = static_cast<Eigen::Index>(spec.K.size());
  if (m == 0) {
    out.k_hessian = Mat(0, 0);
    return out;
  }

  Vec r(m);
  double resid = scaled_residual(phi, spec, q_J, p_K, out.u, &r);
  if (!std::isfinite(resid)) {
    throw ConvergenceError("conjugate solve started outside the potential domain", 0, resid);
  }

  for (int iter = 0; iter < st.max_iters; ++iter) {
    const Vec q = to_eigen(assemble(spec, to_std(q_J), to_std(out.u)));
    const Mat b = k_block(spec, phi.hessian(q));
    Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smallest = svd.singularValues().minCoeff();
    if (smallest < st.regularity_threshold) {
      throw RegularityError("conjugate solve hit a singular Hessian block (smallest singular value " +
                                std::to_string(smallest) + ")",
                            smallest);
    }
    out.k_hessian = b;
    out.iterations = iter + 1;
    if (resid <= st.tol) {
      out.residual = resid;
      return out;
    }

    const Vec delta = svd.solve(r);
    bool improved = false;
    double lambda = 1.0;
    for (int attempt = 0; attempt < 9; ++attempt) {
      const Vec candidate = out.u - lambda * delta;
      Vec r_new(m);
      const double resid_new = scaled_residual(phi, spec, q_J, p_K, candidate, &r_new);
      if (resid_new < resid) {
        out.u = candidate;
        r = r_new;
        resid = resid_new;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) {
      throw ConvergenceError("conjugate solve stalled: damping failed to reduce the residual",
                             out.iterations, resid);
    }
  }
  if (resid > st.tol) {
    throw ConvergenceError("conjugate solve ran out of iterations", st.max_iters, resid);
  }
  out.residual = resid;
  return out;
}

/**
 * Conjugate solve at dual scalars. The value parts are solved by the plain
 * Newton iteration; the derivative parts then satisfy linear relations with
 * the same Hessian block, so a few fixed-matrix iterations with the inverse
 * frozen at the solution settle them level by level (one per dual level).
 */
template <class S>
std::vector<S> solve_conjugate(const Potential& phi, const LegendreSpec& spec,
                               const std::vector<S>& q_J, const std::vector<S>& p_K,
                               const Vec& guess, const NewtonSettings& st) {
  const std::size_t m = spec.K.size();
  Vec qJ0(static_cast<Eigen::Index>(q_J.size()));
  for (std::size_t i = 0; i < q_J.size(); ++i)
    qJ0[static_cast<Eigen::Index>(i)] = value_part(q_J[i]);
  Vec pK0(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) pK0[static_cast<Eigen::Index>(i)] = value_part(p_K[i]);

  const NewtonOutcome base = newton_solve(phi, spec, qJ0, pK0, guess, st);

  std::vector<S> u(m);
  for (std::size_t i = 0; i < m; ++i)
    u[i] = constant_like<S>(base.u[static_cast<Eigen::Index>(i)]);
  if constexpr (std::is_same_v<S, double>) {
    return u;
  } else {
    if (m == 0) return u;
    const Mat binv = base.k_hessian.inverse();
    for (int pass = 0; pass < 8; ++pass) {
      const std::vector<S> q = assemble(spec, q_J, u);
      const std::vector<S> g = phi.gradient_raw(q);
      double worst = 0.0;
      std::vector<S> r(m);
      for (std::size_t i = 0; i < m; ++i) {
        r[i] = g[spec.K[i]] - p_K[i];
        std::vector<double> parts;
        flatten(r[i], parts);
        for (double c : parts)
          worst = std::max(worst, std::abs(c) / std::max(1.0, std::abs(pK0[static_cast<Eigen::Index>(i)])));
      }
      if (worst <= st.tol) return u;
      for (std::size_t i = 0; i < m; ++i) {
        S correction = constant_like<S>(0.0);
        for (std::size_t j = 0; j < m; ++j) {
          correction += binv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * r[j];
        }
        u[i] -= correction;
      }
    }
    throw ConvergenceError("dual refinement of the conjugate solve did not settle", 8, -1.0);
  }
}

template <class S>
std::vector<S> split_indices(const std::vector<S>& y, const std::vector<std::size_t>& idx) {
  std::vector<S> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = y[idx[i]];
  return out;
}

ChartPtr transformed_chart(const Chart& base, const LegendreSpec& spec) {
  std::vector<std::string> q_names(base.dim());
  std::vector<std::string> p_names(base.dim());
  std::vector<double> p_signs(base.dim());
  for (std::size_t j : spec.J) {
    q_names[j] = base.q_names()[j];
    p_names[j] = base.p_display_names()[j];
    p_signs[j] = base.p_display_sign(j);
  }
  std::string klist;
  for (std::size_t k : spec.K) {
    q_names[k] = base.p_display_sign(k) > 0 ? base.p_display_names()[k]
                                            : "p_" + base.q_names()[k];
    p_names[k] = base.q_names()[k];
    p_signs[k] = -1.0;
    if (!klist.empty()) klist += ",";
    klist += base.q_names()[k];
  }
  return std::make_shared<const Chart>(base.name() + "/legendre(" + klist + ")",
                                       std::move(q_names), std::move(p_names),
                                       std::move(p_signs));
}

}  // namespace

LegendreResult legendre_eval(const Potential& phi, const LegendreSpec& spec, const Vec& q_J,
                             const Vec& p_K, const Vec& q_K_guess, const NewtonSettings& settings) {
  if (spec.n != phi.dim()) throw DimensionError("legendre spec arity differs from potential arity");
  if (q_J.size() != static_cast<Eigen::Index>(spec.J.size()) ||
      p_K.size() != static_cast<Eigen::Index>(spec.K.size()) ||
      q_K_guess.size() != static_cast<Eigen::Index>(spec.K.size())) {
    throw DimensionError("legendre evaluation input arity differs from the index split");
  }

  const NewtonOutcome sol = newton_solve(phi, spec, q_J, p_K, q_K_guess, settings);
  const Vec q = to_eigen(assemble(spec, to_std(q_J), to_std(sol.u)));
  double psi = phi.value(q) - p_K.dot(sol.u);
  return LegendreResult{psi, sol.u, sol.iterations, sol.residual};
}

double regularity_indicator(const Potential& phi, const LegendreSpec& spec, const Vec& q) {
  if (spec.n != phi.dim()) throw DimensionError("legendre spec arity differs from potential arity");
  if (spec.K.empty()) return std::numeric_limits<double>::infinity();
  const Mat b = k_block(spec, phi.hessian(q));
  Eigen::JacobiSVD<Mat> svd(b);
  return svd.singularValues().minCoeff();
}

TransformedPotential::TransformedPotential(PotentialPtr source, LegendreSpec spec,
                                           Vec default_guess, NewtonSettings settings)
    : source_(std::move(source)),
      spec_(std::move(spec)),
      default_guess_(std::move(default_guess)),
      settings_(settings) {
  if (!source_) throw Error("transformed potential needs a source potential");
  if (spec_.n != source_->dim()) {
    throw DimensionError("legendre spec arity differs from source potential arity");
  }
  if (default_guess_.size() != static_cast<Eigen::Index>(spec_.K.size())) {
    throw DimensionError("default guess arity differs from the transformed index set");
  }
  chart_ = transformed_chart(*source_->chart(), spec_);
}

std::string TransformedPotential::describe() const {
  std::string klist;
  for (std::size_t k : spec_.K) {
    if (!klist.empty()) klist += ",";
    klist += source_->chart()->q_names()[k];
  }
  return "legendre transform over {" + klist + "} of " + source_->describe();
}

template <class S>
S TransformedPotential::value_impl(const std::vector<S>& y) const {
  if (y.size() != spec_.n) {
    throw DimensionError(describe() + ": coordinate vector arity differs from chart dimension");
  }
  const std::vector<S> q_J = split_indices(y, spec_.J);
  const std::vector<S> p_K = split_indices(y, spec_.K);
  const std::vector<S> u = solve_conjugate(*source_, spec_, q_J, p_K, default_guess_, settings_);
  const std::vector<S> q = assemble(spec_, q_J, u);
  S psi = source_->value_raw(q);
  for (std::size_t i = 0; i < spec_.K.size(); ++i) psi -= p_K[i] * u[i];
  return psi;
}

template <class S>
std::vector<S> TransformedPotential::gradient_impl(const std::vector<S>& y) const {
  if (y.size() != spec_.n) {
    throw DimensionError(describe() + ": coordinate vector arity differs from chart dimension");
  }
  const std::vector<S> q_J = split_indices(y, spec_.J);
  const std::vector<S> p_K = split_indices(y, spec_.K);
  const std::vector<S> u = solve_conjugate(*source_, spec_, q_J, p_K, default_guess_, settings_);
  const std::vector<S> q = assemble(spec_, q_J, u);
  const std::vector<S> g = source_->gradient_raw(q);
  std::vector<S> out(spec_.n);
  for (std::size_t j : spec_.J) out[j] = g[j];
  for (std::size_t i = 0; i < spec_.K.size(); ++i) out[spec_.K[i]] = -u[i];
  return out;
}

double TransformedPotential::value_raw(const std::vector<double>& y) const {
  return value_impl<double>(y);
}
D1 TransformedPotential::value_raw(const std::vector<D1>& y) const { return value_impl<D1>(y); }
D2 TransformedPotential::value_raw(const std::vector<D2>& y) const { return value_impl<D2>(y); }

std::vector<double> TransformedPotential::gradient_raw(const std::vector<double>& y) const {
  return gradient_impl<double>(y);
}
std::vector<D1> TransformedPotential::gradient_raw(const std::vector<D1>& y) const {
  return gradient_impl<D1>(y);
}
std::vector<D2> TransformedPotential::gradient_raw(const std::vector<D2>& y) const {
  return gradient_impl<D2>(y);
}

Mat TransformedPotential::hessian(const Vec& y) const {
  const std::vector<double> ys = to_std(y);
  const std::vector<double> q_J = split_indices(ys, spec_.J);
  const std::vector<double> p_K = split_indices(ys, spec_.K);
  const std::vector<double> u =
      solve_conjugate(*source_, spec_, q_J, p_K, default_guess_, settings_);
  const Vec q = to_eigen(assemble(spec_, q_J, u));
  const Mat h = source_->hessian(q);

  const auto nj = static_cast<Eigen::Index>(spec_.J.size());
  const auto nk = static_cast<Eigen::Index>(spec_.K.size());
  Mat h_jj(nj, nj), h_jk(nj, nk), b(nk, nk);
  for (Eigen::Index r = 0; r < nj; ++r) {
    for (Eigen::Index c = 0; c < nj; ++c)
      h_jj(r, c) = h(static_cast<Eigen::Index>(spec_.J[static_cast<std::size_t>(r)]),
                     static_cast<Eigen::Index>(spec_.J[static_cast<std::size_t>(c)]));
    for (Eigen::Index c = 0; c < nk; ++c)
      h_jk(r, c) = h(static_cast<Eigen::Index>(spec_.J[static_cast<std::size_t>(r)]),
                     static_cast<Eigen::Index>(spec_.K[static_cast<std::size_t>(c)]));
  }
  for (Eigen::Index r = 0; r < nk; ++r)
    for (Eigen::Index c = 0; c < nk; ++c)
      b(r, c) = h(static_cast<Eigen::Index>(spec_.K[static_cast<std::size_t>(r)]),
                  static_cast<Eigen::Index>(spec_.K[static_cast<std::size_t>(c)]));

  const Mat binv = b.inverse();
  const Mat psi_jj = h_jj - h_jk * binv * h_jk.transpose();
  const Mat psi_jk = h_jk * binv;
  const Mat psi_kk = -binv;

  Mat out(spec_.n, spec_.n);
  for (Eigen::Index r = 0; r < nj; ++r) {
    for (Eigen::Index c = 0; c < nj; ++c)
      out(static_cast<Eigen::Index>(spec_.J[static_cast<std::size_t>(r)]),
          static_cast<Eigen::Index>(spec_.J[static_cast<std::size_t>(c)])) = psi_jj(r, c);
    for (Eigen::Index c = 0; c < nk; ++c) {
      out(static_cast<Eigen::Index>(spec_.J[static_cast<std::size_t>(r)]),
          static_cast<Eigen::Index>(spec_.K[static_cast<std::size_t>(c)])) = psi_jk(r, c);
      out(static_cast<Eigen::Index>(spec_.K[static_cast<std::size_t>(c)]),
          static_cast<Eigen::Index>(spec_.J[static_cast<std::size_t>(r)])) = psi_jk(r, c);
    }
  }
  for (Eigen::Index r = 0; r < nk; ++r)
    for (Eigen::Index c = 0; c < nk; ++c)
      out(static_cast<Eigen::Index>(spec_.K[static_cast<std::size_t>(r)]),
          static_cast<Eigen::Index>(spec_.K[static_cast<std::size_t>(c)])) = psi_kk(r, c);
  return out;
}

double pushforward_check(const Potential& phi, const ProcessSpec& X, const LegendreSpec& spec,
                         const Vec& q0, double t_end, double dt, const NewtonSettings& settings) {
  require_same_chart(phi.chart(), X.chart());
  if (spec.n != phi.dim()) throw DimensionError("legendre spec arity differs from potential arity");
  if (!(dt > 0.0) || !(t_end > 0.0)) throw ConfigError("pushforward", "t_end and dt must be positive");
  const auto steps = static_cast<long>(std::llround(t_end / dt));
  if (steps < 2) throw ConfigError("pushforward", "need at least two steps for the velocity check");

  const auto n = static_cast<Eigen::Index>(phi.dim());

  // Base-chart trajectory of q-dot = X(q), classical RK4: its O(dt^4) bias
  // is far below the O(dt^2) central-difference error measured next.
  std::vector<Vec> qs;
  qs.reserve(static_cast<std::size_t>(steps) + 1);
  qs.push_back(q0);
  Vec q = q0;
  for (long k = 0; k < steps; ++k) {
    const Vec k1 = X.eval(q);
    const Vec k2 = X.eval(Vec(q + (0.5 * dt) * k1));
    const Vec k3 = X.eval(Vec(q + (0.5 * dt) * k2));
    const Vec k4 = X.eval(Vec(q + dt * k3));
    q += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    qs.push_back(q);
  }

  // Map every sample through (q_J, p_K = dPhi/dq_K) and form the analytic
  // pushforward velocity at the same points.
  std::vector<Vec> mapped, analytic;
  mapped.reserve(qs.size());
  analytic.reserve(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const Mat hess = phi.hessian(qs[i]);
    if (!spec.K.empty()) {
      const Mat b = k_block(spec, hess);
      Eigen::JacobiSVD<Mat> svd(b);
      const double smallest = svd.singularValues().minCoeff();
      if (smallest < settings.regularity_threshold) {
        throw RegularityError("pushforward check hit a singular Hessian block", smallest,
                              static_cast<std::ptrdiff_t>(i));
      }
    }
    const Vec g = phi.gradient(qs[i]);
    const Vec x_val = X.eval(qs[i]);
    Vec y(n), v(n);
    for (std::size_t j : spec.J) {
      y[static_cast<Eigen::Index>(j)] = qs[i][static_cast<Eigen::Index>(j)];
      v[static_cast<Eigen::Index>(j)] = x_val[static_cast<Eigen::Index>(j)];
    }
    for (std::size_t k : spec.K) {
      y[static_cast<Eigen::Index>(k)] = g[static_cast<Eigen::Index>(k)];
      v[static_cast<Eigen::Index>(k)] = hess.row(static_cast<Eigen::Index>(k)).dot(x_val);
    }
    mapped.push_back(std::move(y));
    analytic.push_back(std::move(v));
  }

  double defect = 0.0;
  for (std::size_t i = 1; i + 1 < mapped.size(); ++i) {
    const Vec fd = (mapped[i + 1] - mapped[i - 1]) / (2.0 * dt);
    for (Eigen::Index c = 0; c < n; ++c) {
      defect = std::max(defect,
                        std::abs(fd[c] - analytic[i][c]) / std::max(1.0, std::abs(analytic[i][c])));
    }
  }
  return defect;
}

}  // namespace symthermo
