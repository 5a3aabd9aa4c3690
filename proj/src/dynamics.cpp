#include "symthermo/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace symthermo {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ProcessSpec::ProcessSpec(ChartPtr chart, std::vector<std::string> components)
    : chart_(std::move(chart)), sources_(std::move(components)) {
  if (!chart_) throw Error("process spec needs a chart");
  if (sources_.size() != chart_->dim()) {
    throw DimensionError("process spec component count differs from chart dimension");
  }
  exprs_.reserve(sources_.size());
  for (const auto& src : sources_) exprs_.push_back(parse_expression(src, chart_->q_names()));
}

ProcessSpec ProcessSpec::zero(ChartPtr chart) {
  std::vector<std::string> zeros(chart->dim(), "0");
  return ProcessSpec(std::move(chart), std::move(zeros));
}

std::string ProcessSpec::describe() const {
  std::string out = "(";
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (i) out += ", ";
    out += sources_[i];
  }
  return out + ")";
}

std::string IsochoricHamiltonian::describe() const {
  return "isochoric process Hamiltonian (A=" + fmt(params_.A) + ", C=" + fmt(params_.C) +
         ", Lambda=" + fmt(lambda_) + ")";
}

std::string IsothermalIsochoricHamiltonian::describe() const {
  return "isothermal-isochoric process Hamiltonian (A=" + fmt(params_.A) + ", C=" + fmt(params_.C) +
         ", Lambda=" + fmt(lambda_) + ")";
}

GeneralProcessHamiltonian::GeneralProcessHamiltonian(PotentialPtr phi, ProcessSpec process,
                                                     double lambda)
    : phi_(std::move(phi)), process_(std::move(process)), lambda_(lambda) {
  if (!phi_) throw Error("general process Hamiltonian needs a potential");
  require_same_chart(phi_->chart(), process_.chart());
}

std::string GeneralProcessHamiltonian::describe() const {
  return "general process Hamiltonian X=" + process_.describe() + " over " + phi_->describe() +
         ", Lambda=" + fmt(lambda_);
}

std::string InteractingMapHamiltonian::describe() const {
  return "interacting map Hamiltonian (a=" + fmt(a_) + ", b=" + fmt(b_) + ")";
}

HamiltonianPtr isochoric_hamiltonian(IdealGasParams params, double lambda) {
  return std::make_shared<IsochoricHamiltonian>(params, lambda);
}

HamiltonianPtr isothermal_isochoric_hamiltonian(IdealGasParams params, double lambda) {
  return std::make_shared<IsothermalIsochoricHamiltonian>(params, lambda);
}

HamiltonianPtr general_process_hamiltonian(PotentialPtr phi, ProcessSpec process, double lambda) {
  return std::make_shared<GeneralProcessHamiltonian>(std::move(phi), std::move(process), lambda);
}

HamiltonianPtr interacting_map_hamiltonian(double a, double b, double lambda) {
  return std::make_shared<InteractingMapHamiltonian>(a, b, lambda);
}

std::pair<PhasePoint, double> closed_form_isochoric(const PhasePoint& x0,
                                                    const IdealGasParams& params, double t) {
  require_same_chart(Chart::hydrostatic(), x0.chart());
  const double C = params.C;
  const double g = params.gamma();
  const double et = std::exp(t);
  Vec q(3), p(3);
  q << x0.q()[0] * et, x0.q()[1], x0.q()[2] * et;
  p << x0.p()[0] * std::exp(t / C), x0.p()[1] * std::exp(g * t), x0.p()[2] * std::exp(t / C);
  const double e0 = IdealGasPotential(params).value(x0.q());
  return {PhasePoint(x0.chart(), std::move(q), std::move(p)), e0 * std::exp(g * t)};
}

std::pair<PhasePoint, double> closed_form_isothermal_isochoric(const PhasePoint& x0,
                                                               const IdealGasParams& params,
                                                               double t) {
  require_same_chart(Chart::hydrostatic(), x0.chart());
  const double et = std::exp(t);
  Vec q(3), p(3);
  q << (x0.q()[0] - x0.q()[2] * t) * et, x0.q()[1], x0.q()[2] * et;
  p << x0.p()[0], x0.p()[1] * et, x0.p()[2] + x0.p()[0] * t;
  const double e0 = IdealGasPotential(params).value(x0.q());
  return {PhasePoint(x0.chart(), std::move(q), std::move(p)), e0 * et};
}

std::pair<PhasePoint, double> closed_form_interacting(const PhasePoint& x0, double e0, double a,
                                                      double b, double t) {
  require_same_chart(Chart::hydrostatic(), x0.chart());
  const double v = x0.q()[1];
  const double n = x0.q()[2];
  if (v == 0.0) throw DomainError("V", "interacting-map closed form is undefined at V = 0");
  const double dHdV = -a * n * n / (v * v) - b * std::pow(n, 4) / std::pow(v, 4);
  const double dHdN = 2.0 * a * n / v + (4.0 * b / 3.0) * std::pow(n, 3) / std::pow(v, 3);
  Vec p(3);
  p << x0.p()[0], x0.p()[1] - dHdV * t, x0.p()[2] - dHdN * t;
  return {PhasePoint(x0.chart(), x0.q(), std::move(p)), e0};
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ConfigError("integrator.dt", "integrator.dt must be positive and finite");
  if (steps < 1) throw ConfigError("integrator.steps", "integrator.steps must be at least 1");
  if (!(fixed_point_tol > 0.0))
    throw ConfigError("integrator.fixed_point_tol", "integrator.fixed_point_tol must be positive");
  if (max_fixed_point_iters < 1)
    throw ConfigError("integrator.max_fixed_point_iters",
                      "integrator.max_fixed_point_iters must be at least 1");
}

std::string IntegratorConfig::describe() const {
  std::string m = method == Method::ImplicitMidpoint ? "implicit midpoint" : "rk4";
  return m + ", dt=" + fmt(dt) + ", steps=" + std::to_string(steps);
}

IntegratorConfig::Method IntegratorConfig::method_from_string(const std::string& name) {
  if (name == "implicit_midpoint") return Method::ImplicitMidpoint;
  if (name == "rk4") return Method::RK4;
  throw ConfigError("integrator.method",
                    "integrator.method must be 'implicit_midpoint' or 'rk4', got '" + name + "'");
}

namespace {

Vec stack(const PhasePoint& x) {
  const auto n = static_cast<Eigen::Index>(x.dim());
  Vec z(2 * n);
  z.head(n) = x.q();
  z.tail(n) = x.p();
  return z;
}

PhasePoint unstack(const ChartPtr& chart, const Vec& z) {
  const Eigen::Index n = z.size() / 2;
  return PhasePoint(chart, z.head(n), z.tail(n));
}

Vec flow_field(const Hamiltonian& H, const ChartPtr& chart, const Vec& z) {
  const Eigen::Index n = z.size() / 2;
  auto [dq, dp] = H.gradient(unstack(chart, z));
  Vec f(2 * n);
  f.head(n) = dp;
  f.tail(n) = -dq;
  return f;
}

Vec midpoint_step(const Hamiltonian& H, const ChartPtr& chart, const Vec& z,
                  const IntegratorConfig& cfg) {
  Vec y = z + cfg.dt * flow_field(H, chart, z);
  double delta = 0.0;
  for (int it = 0; it < cfg.max_fixed_point_iters; ++it) {
    const Vec next = z + cfg.dt * flow_field(H, chart, 0.5 * (z + y));
    delta = (next - y).cwiseAbs().maxCoeff();
    y = next;
    if (delta <= cfg.fixed_point_tol * std::max(1.0, y.cwiseAbs().maxCoeff())) return y;
  }
  throw ConvergenceError("implicit-midpoint fixed-point iteration did not converge",
                         cfg.max_fixed_point_iters, delta);
}

Vec rk4_step(const Hamiltonian& H, const ChartPtr& chart, const Vec& z,
             const IntegratorConfig& cfg) {
  const double dt = cfg.dt;
  const Vec k1 = flow_field(H, chart, z);
  const Vec k2 = flow_field(H, chart, z + (0.5 * dt) * k1);
  const Vec k3 = flow_field(H, chart, z + (0.5 * dt) * k2);
  const Vec k4 = flow_field(H, chart, z + dt * k3);
  return z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec dispatch_step(const Hamiltonian& H, const ChartPtr& chart, const Vec& z,
                  const IntegratorConfig& cfg) {
  return cfg.method == IntegratorConfig::Method::ImplicitMidpoint ? midpoint_step(H, chart, z, cfg)
                                                                  : rk4_step(H, chart, z, cfg);
}

}  // namespace

PhasePoint integrator_step(const Hamiltonian& H, const PhasePoint& x, const IntegratorConfig& cfg) {
  cfg.validate();
  require_same_chart(H.chart(), x.chart());
  return unstack(x.chart(), dispatch_step(H, x.chart(), stack(x), cfg));
}

Trajectory integrate(HamiltonianPtr H, const PhasePoint& x0, const IntegratorConfig& cfg) {
  if (!H) throw Error("integrate needs a Hamiltonian");
  cfg.validate();
  require_same_chart(H->chart(), x0.chart());

  Trajectory traj{H, cfg, {}};
  traj.samples.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  traj.samples.push_back({0.0, x0});

  const ChartPtr chart = x0.chart();
  Vec z = stack(x0);
  for (long k = 1; k <= cfg.steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * cfg.dt;
    try {
      z = dispatch_step(*H, chart, z, cfg);
      traj.samples.push_back({static_cast<double>(k) * cfg.dt, unstack(chart, z)});
    } catch (const StepError&) {
      throw;
    } catch (const Error& e) {
      throw StepError("integration step " + std::to_string(k) + " failed after t=" + fmt(t_prev) +
                          ": " + e.what(),
                      static_cast<int>(k), t_prev);
    }
  }
  return traj;
}

DiagnosticsReport diagnose(const Trajectory& traj, const Potential& phi,
                           const ClosedFormMap& closed_form) {
  if (traj.samples.empty()) throw Error("diagnose needs a non-empty trajectory");
  const Hamiltonian& H = *traj.hamiltonian;
  const bool hydro = traj.front().x.chart().get() == Chart::hydrostatic().get();

  DiagnosticsReport rep;
  const double h0 = H.value(traj.front().x);
  const double hscale = std::max(1.0, std::abs(h0));

  static const char* names[] = {"S", "V", "N", "T", "P", "mu", "E"};
  std::vector<double> dev(7, 0.0);

  for (const auto& sample : traj.samples) {
    const PhasePoint& x = sample.x;
    rep.max_hamiltonian_drift =
        std::max(rep.max_hamiltonian_drift, std::abs(H.value(x) - h0) / hscale);
    rep.max_onshell = std::max(rep.max_onshell, onshell_residual(phi, x));
    const double e_num = phi.value(x.q());
    if (hydro) {
      rep.max_eos = std::max(rep.max_eos, std::abs(eos_residual(x)));
      rep.max_euler = std::max(rep.max_euler, std::abs(euler_residual(x, e_num)));
    }
    if (closed_form) {
      const auto [ref, e_ref] = closed_form(sample.t);
      const double num[7] = {x.q()[0],      x.q()[1],      x.q()[2],     x.p_display(0),
                             x.p_display(1), x.p_display(2), e_num};
      const double refv[7] = {ref.q()[0],      ref.q()[1],      ref.q()[2],     ref.p_display(0),
                              ref.p_display(1), ref.p_display(2), e_ref};
      for (int i = 0; i < 7; ++i) {
        dev[static_cast<std::size_t>(i)] =
            std::max(dev[static_cast<std::size_t>(i)],
                     std::abs(num[i] - refv[i]) / std::max(1.0, std::abs(refv[i])));
      }
    }
  }

  if (closed_form) {
    rep.closed_form_compared = true;
    for (int i = 0; i < 7; ++i) rep.closed_form_deviation.emplace_back(names[i], dev[static_cast<std::size_t>(i)]);
  }

  const FlowMap one_step = [&](const PhasePoint& y) { return integrator_step(H, y, traj.config); };
  rep.final_symplectic_defect = symplectic_defect(one_step, traj.back().x, 1e-5);
  return rep;
}

std::string DiagnosticsReport::summary() const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3);
  os << "hamiltonian drift (max, scaled)   : " << max_hamiltonian_drift << "\n";
  os << "on-shell residual (max)           : " << max_onshell << "\n";
  os << "equation-of-state residual (max)  : " << max_eos << "\n";
  os << "euler-formula residual (max)      : " << max_euler << "\n";
  os << "symplectic defect (final step)    : " << final_symplectic_defect << "\n";
  if (closed_form_compared) {
    os << "closed-form deviation (max, scaled):";
    for (const auto& [name, value] : closed_form_deviation) os << " " << name << "=" << value;
    os << "\n";
  }
  return os.str();
}

}  // namespace symthermo
