// Acceptance gate: twelve behavioral criteria with pinned tolerances, one
// verdict line each, nonzero exit when anything fails. Criteria 1-11 drive
// the library directly; criterion 12 spawns the CLI binary named by the
// SYMTHERMO_CLI_PATH compile definition.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symthermo/csv.hpp"
#include "symthermo/dynamics.hpp"
#include "symthermo/ensembles.hpp"
#include "symthermo/errors.hpp"
#include "symthermo/geometry.hpp"
#include "symthermo/potential.hpp"

namespace st = symthermo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const std::string& what, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("threw: ") + e.what();
  }
  std::printf("[%s] criterion %02d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, what.c_str(),
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

double rel(double defect, double scale) {
  return std::abs(defect) / std::max(1.0, std::abs(scale));
}

double max_deviation(const st::DiagnosticsReport& d) {
  double worst = 0.0;
  for (const auto& [key, dev] : d.closed_form_deviation) worst = std::max(worst, dev);
  return worst;
}

/// The two reference runs shared by several criteria: implicit midpoint,
/// dt = 1e-3, t in [0, 1], from the embedded point over (S, V, N) = (0.5, 1, 1).
struct Flows {
  st::IdealGasParams params;
  std::shared_ptr<st::IdealGasPotential> gas;
  st::PhasePoint x0;
  st::Trajectory iso;
  st::DiagnosticsReport iso_diag;
  st::Trajectory ith;
  st::DiagnosticsReport ith_diag;
};

Flows make_flows() {
  st::IdealGasParams params;  // A = 1, C = 3/2
  auto gas = std::make_shared<st::IdealGasPotential>(params);
  st::Vec q0(3);
  q0 << 0.5, 1.0, 1.0;
  st::PhasePoint x0 = st::embed(*gas, q0);
  st::IntegratorConfig cfg;  // implicit midpoint, dt = 1e-3, 1000 steps
  st::Trajectory iso = st::integrate(st::isochoric_hamiltonian(params, 0.0), x0, cfg);
  st::DiagnosticsReport iso_diag = st::diagnose(
      iso, *gas, [x0, params](double t) { return st::closed_form_isochoric(x0, params, t); });
  st::Trajectory ith = st::integrate(st::isothermal_isochoric_hamiltonian(params, 0.0), x0, cfg);
  st::DiagnosticsReport ith_diag = st::diagnose(ith, *gas, [x0, params](double t) {
    return st::closed_form_isothermal_isochoric(x0, params, t);
  });
  return {params, gas, x0, std::move(iso), iso_diag, std::move(ith), ith_diag};
}

st::Vec random_q(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> s(-1.5, 1.5), vn(0.3, 4.0);
  st::Vec q(3);
  q << s(gen), vn(gen), vn(gen);
  return q;
}

/// A random polynomial component over (S, V, N): total on the whole chart.
std::string random_poly(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> coef(-1.5, 1.5);
  std::uniform_int_distribution<int> nterms(1, 3), nfactors(0, 2), var(0, 2);
  const char* names[] = {"S", "V", "N"};
  std::ostringstream os;
  const int terms = nterms(gen);
  for (int t = 0; t < terms; ++t) {
    if (t) os << " + ";
    char lit[32];
    std::snprintf(lit, sizeof(lit), "%.17g", coef(gen));
    os << lit;
    const int factors = nfactors(gen);
    for (int f = 0; f < factors; ++f) os << "*" << names[var(gen)];
  }
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int spawn_cli(const std::string& args, const fs::path& capture) {
  const std::string cmd =
      std::string(SYMTHERMO_CLI_PATH) + " " + args + " > '" + capture.string() + "' 2>&1";
  const int raw = std::system(cmd.c_str());
  if (raw == -1 || !WIFEXITED(raw)) return -1;
  return WEXITSTATUS(raw);
}

}  // namespace

int main() {
  std::optional<Flows> flows;
  std::string setup_error;
  try {
    flows.emplace(make_flows());
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  const auto with_flows = [&](std::function<Outcome(const Flows&)> body) {
    return [&flows, &setup_error, body]() -> Outcome {
      if (!flows) return {false, "reference runs failed: " + setup_error};
      return body(*flows);
    };
  };

  run_criterion(
      1, "isochoric heating flow matches its exponential solution over t in [0, 1]",
      with_flows([](const Flows& f) -> Outcome {
        const double dev = max_deviation(f.iso_diag);
        return {dev <= 1e-5, "max scaled deviation " + sci(dev) + ", bound 1e-05"};
      }));

  run_criterion(
      2, "isothermal particle injection matches its closed form with T and V conserved",
      with_flows([](const Flows& f) -> Outcome {
        const double dev = max_deviation(f.ith_diag);
        double t_step = 0.0;
        double v_drift = 0.0;
        const auto& samples = f.ith.samples;
        for (std::size_t i = 1; i < samples.size(); ++i) {
          t_step = std::max(
              t_step, rel(samples[i].x.p_display(0) - samples[i - 1].x.p_display(0),
                          samples[i - 1].x.p_display(0)));
          v_drift =
              std::max(v_drift, rel(samples[i].x.q()[1] - samples[0].x.q()[1],
                                    samples[0].x.q()[1]));
        }
        const bool pass = dev <= 1e-5 && t_step <= 1e-10 && v_drift <= 1e-12;
        return {pass, "deviation " + sci(dev) + " (bound 1e-05), per-step T drift " +
                          sci(t_step) + " (bound 1e-10), V drift " + sci(v_drift) +
                          " (bound 1e-12)"};
      }));

  run_criterion(
      3, "equilibrium residuals stay below 1e-6 along both flows and vanish at the start",
      with_flows([](const Flows& f) -> Outcome {
        const double along = std::max({f.iso_diag.max_onshell, f.iso_diag.max_eos,
                                       f.iso_diag.max_euler, f.ith_diag.max_onshell,
                                       f.ith_diag.max_eos, f.ith_diag.max_euler});
        const double e0 = f.gas->value(f.x0.q());
        const double at_start =
            std::max({st::onshell_residual(*f.gas, f.x0), std::abs(st::eos_residual(f.x0)),
                      std::abs(st::euler_residual(f.x0, e0))});
        const bool pass = along <= 1e-6 && at_start <= 1e-12;
        return {pass, "max along runs " + sci(along) + " (bound 1e-06), at t=0 " +
                          sci(at_start) + " (bound 1e-12)"};
      }));

  run_criterion(
      4, "every process Hamiltonian is constant on the equilibrium submanifold",
      with_flows([](const Flows& f) -> Outcome {
        std::mt19937_64 gen(20260814ULL);
        std::uniform_real_distribution<double> lam(-2.0, 2.0);
        std::vector<std::pair<st::HamiltonianPtr, double>> candidates;
        {
          const double l1 = lam(gen);
          candidates.emplace_back(st::isochoric_hamiltonian(f.params, l1), l1);
          const double l2 = lam(gen);
          candidates.emplace_back(st::isothermal_isochoric_hamiltonian(f.params, l2), l2);
        }
        for (int k = 0; k < 10; ++k) {
          const double l = lam(gen);
          std::vector<std::string> comps = {random_poly(gen), random_poly(gen),
                                            random_poly(gen)};
          candidates.emplace_back(
              st::general_process_hamiltonian(
                  f.gas, st::ProcessSpec(st::Chart::hydrostatic(), std::move(comps)), l),
              l);
        }
        double worst = 0.0;
        for (const auto& [H, lambda] : candidates) {
          for (int i = 0; i < 100; ++i) {
            const st::PhasePoint x = st::embed(*f.gas, random_q(gen));
            worst = std::max(worst, rel(H->value(x) - lambda, lambda));
          }
        }
        return {worst <= 1e-12, "max scaled |H - Lambda| " + sci(worst) + ", bound 1e-12"};
      }));

  run_criterion(
      5, "the midpoint integrator conserves both Hamiltonians to 1e-6 over the full runs",
      with_flows([](const Flows& f) -> Outcome {
        const double drift =
            std::max(f.iso_diag.max_hamiltonian_drift, f.ith_diag.max_hamiltonian_drift);
        return {drift <= 1e-6, "max scaled drift " + sci(drift) + ", bound 1e-06"};
      }));

  run_criterion(
      6, "one midpoint step is symplectic to finite-difference accuracy and beats RK4",
      with_flows([](const Flows& f) -> Outcome {
        const st::HamiltonianPtr H = st::isochoric_hamiltonian(f.params, 0.0);
        st::IntegratorConfig mid;
        mid.dt = 0.1;
        mid.steps = 1;
        st::IntegratorConfig rk4 = mid;
        rk4.method = st::IntegratorConfig::Method::RK4;
        const double d_mid = st::symplectic_defect(
            [&](const st::PhasePoint& x) { return st::integrator_step(*H, x, mid); }, f.x0,
            1e-5);
        const double d_rk4 = st::symplectic_defect(
            [&](const st::PhasePoint& x) { return st::integrator_step(*H, x, rk4); }, f.x0,
            1e-5);
        const bool pass = d_mid <= 1e-5 && d_rk4 > d_mid;
        return {pass, "midpoint defect " + sci(d_mid) + " (bound 1e-05), rk4 defect " +
                          sci(d_rk4) + " (must exceed midpoint)"};
      }));

  run_criterion(
      7, "midpoint convergence toward the closed forms is second order in dt",
      with_flows([](const Flows& f) -> Outcome {
        const auto fitted_order = [&](const st::HamiltonianPtr& H,
                                      const st::ClosedFormMap& closed) {
          std::vector<double> errs;
          for (const double dt : {4e-3, 2e-3, 1e-3}) {
            st::IntegratorConfig cfg;
            cfg.dt = dt;
            cfg.steps = std::lround(1.0 / dt);
            const st::Trajectory traj = st::integrate(H, f.x0, cfg);
            const st::PhasePoint ref = closed(traj.back().t).first;
            const st::PhasePoint& x = traj.back().x;
            double err = 0.0;
            for (Eigen::Index k = 0; k < 3; ++k) {
              err = std::max(err, rel(x.q()[k] - ref.q()[k], ref.q()[k]));
              err = std::max(err, rel(x.p()[k] - ref.p()[k], ref.p()[k]));
            }
            errs.push_back(err);
          }
          return std::log2(errs[0] / errs[2]) / 2.0;
        };
        const st::PhasePoint x0 = f.x0;
        const st::IdealGasParams params = f.params;
        const double iso_order =
            fitted_order(st::isochoric_hamiltonian(params, 0.0), [x0, params](double t) {
              return st::closed_form_isochoric(x0, params, t);
            });
        const double ith_order = fitted_order(st::isothermal_isochoric_hamiltonian(params, 0.0),
                                              [x0, params](double t) {
                                                return st::closed_form_isothermal_isochoric(
                                                    x0, params, t);
                                              });
        const bool pass =
            std::abs(iso_order - 2.0) <= 0.2 && std::abs(ith_order - 2.0) <= 0.2;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "fitted orders %.3f and %.3f, required 2.0 +- 0.2",
                      iso_order, ith_order);
        return {pass, buf};
      }));

  run_criterion(
      8, "the interacting map shifts P and mu affinely with the base point frozen",
      with_flows([](const Flows& f) -> Outcome {
        const double a = 0.1;
        st::IntegratorConfig cfg;  // dt = 1e-3, 1000 steps
        const st::Trajectory run = st::integrate(st::interacting_map_hamiltonian(a, 0.0),
                                                 f.x0, cfg);
        const double p0 = f.x0.p_display(1);
        const double t0 = f.x0.p_display(0);
        const double nt_scale = std::max(1.0, std::abs(f.x0.q()[2] * t0));
        double p_dev = 0.0;
        double frozen = 0.0;
        double eos_dev = 0.0;
        for (const auto& sample : run.samples) {
          // N0 = V0 = 1, so the drift rate is exactly a and the
          // equation-of-state residual ramps as -a t.
          const double expect = p0 - a * sample.t;
          p_dev = std::max(p_dev, rel(sample.x.p_display(1) - expect, expect));
          for (Eigen::Index k = 0; k < 3; ++k)
            frozen = std::max(frozen, rel(sample.x.q()[k] - f.x0.q()[k], f.x0.q()[k]));
          frozen = std::max(frozen, rel(sample.x.p_display(0) - t0, t0));
          eos_dev = std::max(
              eos_dev, std::abs(st::eos_residual(sample.x) + a * sample.t / nt_scale));
        }
        const double b = 0.06;
        const st::Trajectory run2 = st::integrate(st::interacting_map_hamiltonian(a, b),
                                                  f.x0, cfg);
        const double e0 = f.gas->value(f.x0.q());
        const st::PhasePoint x0 = f.x0;
        const st::DiagnosticsReport d2 =
            st::diagnose(run2, *f.gas, [x0, e0, a, b](double t) {
              return st::closed_form_interacting(x0, e0, a, b, t);
            });
        const double dev2 = max_deviation(d2);
        const double slope =
            (run2.back().x.p_display(1) - run2.front().x.p_display(1)) / run2.back().t;
        const double slope_dev = std::abs(slope + (a + b));
        const bool pass = p_dev <= 1e-12 && frozen <= 1e-14 && eos_dev <= 1e-12 &&
                          dev2 <= 1e-12 && slope_dev <= 1e-12;
        return {pass, "P deviation " + sci(p_dev) + ", frozen-coordinate drift " + sci(frozen) +
                          ", eos-ramp deviation " + sci(eos_dev) + ", two-coupling deviation " +
                          sci(dev2) + ", slope error " + sci(slope_dev) + "; bounds 1e-12"};
      }));

  run_criterion(
      9, "partial Legendre transforms invert, differentiate, and compose correctly",
      with_flows([](const Flows& f) -> Outcome {
        std::mt19937_64 gen(7771);
        std::uniform_real_distribution<double> t_in(0.4, 1.4), vn(0.3, 4.0), pv(0.4, 2.0),
            n_small(0.5, 2.0);
        double worst_inv = 0.0;
        double worst_grad = 0.0;
        for (const char* preset : {"helmholtz", "gibbs"}) {
          const st::LegendreSpec spec = st::hydrostatic_preset(preset);
          st::Vec guess(static_cast<Eigen::Index>(spec.K.size()));
          for (std::size_t i = 0; i < spec.K.size(); ++i)
            guess[static_cast<Eigen::Index>(i)] = spec.K[i] == 0 ? 0.0 : 1.0;
          const st::TransformedPotential psi(f.gas, spec, guess);

          for (int i = 0; i < 50; ++i) {
            const st::Vec q = random_q(gen);
            if (st::regularity_indicator(*f.gas, spec, q) < 1e-8) continue;
            const st::Vec g = f.gas->gradient(q);
            st::Vec q_J(static_cast<Eigen::Index>(spec.J.size()));
            st::Vec p_K(static_cast<Eigen::Index>(spec.K.size()));
            st::Vec q_K(static_cast<Eigen::Index>(spec.K.size()));
            for (std::size_t j = 0; j < spec.J.size(); ++j)
              q_J[static_cast<Eigen::Index>(j)] = q[static_cast<Eigen::Index>(spec.J[j])];
            for (std::size_t k = 0; k < spec.K.size(); ++k) {
              p_K[static_cast<Eigen::Index>(k)] = g[static_cast<Eigen::Index>(spec.K[k])];
              q_K[static_cast<Eigen::Index>(k)] = q[static_cast<Eigen::Index>(spec.K[k])];
            }
            // Transforming again over the same slots must hand back the
            // original momenta and the original potential value.
            const st::LegendreResult back =
                st::legendre_eval(psi, spec, q_J, -q_K, 1.15 * p_K);
            const double phi_q = f.gas->value(q);
            worst_inv = std::max(worst_inv, rel(back.psi - phi_q, phi_q));
            for (Eigen::Index k = 0; k < back.q_K.size(); ++k)
              worst_inv = std::max(worst_inv, rel(back.q_K[k] - p_K[k], p_K[k]));
          }

          for (int i = 0; i < 50; ++i) {
            st::Vec y(3);
            if (spec.K.size() == 1) {
              y << t_in(gen), vn(gen), vn(gen);  // (T, V, N)
            } else {
              y << t_in(gen), -pv(gen), n_small(gen);  // (T, p_V, N)
            }
            const st::Vec analytic = psi.gradient(y);
            const st::Vec dual = st::dual_gradient(psi, y);
            for (Eigen::Index k = 0; k < 3; ++k)
              worst_grad = std::max(worst_grad, rel(dual[k] - analytic[k], analytic[k]));
            // The K components of the gradient are minus the coordinates the
            // solve recovered.
            st::Vec q_J(static_cast<Eigen::Index>(spec.J.size()));
            st::Vec p_K(static_cast<Eigen::Index>(spec.K.size()));
            for (std::size_t j = 0; j < spec.J.size(); ++j)
              q_J[static_cast<Eigen::Index>(j)] = y[static_cast<Eigen::Index>(spec.J[j])];
            for (std::size_t k = 0; k < spec.K.size(); ++k)
              p_K[static_cast<Eigen::Index>(k)] = y[static_cast<Eigen::Index>(spec.K[k])];
            const st::LegendreResult sol = st::legendre_eval(*f.gas, spec, q_J, p_K, guess);
            for (std::size_t k = 0; k < spec.K.size(); ++k) {
              const auto ek = static_cast<Eigen::Index>(k);
              worst_grad = std::max(
                  worst_grad,
                  rel(analytic[static_cast<Eigen::Index>(spec.K[k])] + sol.q_K[ek],
                      sol.q_K[ek]));
            }
          }
        }

        // Double transform against the two single-step routes, on a 5 x 5
        // grid of the mixed chart.
        st::Vec s_guess(1), v_guess(1), sv_guess(2);
        s_guess << 0.0;
        v_guess << 1.0;
        sv_guess << 0.0, 1.0;
        const auto helmholtz = std::make_shared<st::TransformedPotential>(
            f.gas, st::hydrostatic_preset("helmholtz"), s_guess);
        const auto enthalpy = std::make_shared<st::TransformedPotential>(
            f.gas, st::hydrostatic_preset("enthalpy"), v_guess);
        const st::TransformedPotential gibbs(f.gas, st::hydrostatic_preset("gibbs"), sv_guess);
        const st::TransformedPotential enthalpy_of_helmholtz(helmholtz, st::LegendreSpec(3, {1}),
                                                             v_guess);
        const st::TransformedPotential helmholtz_of_enthalpy(enthalpy, st::LegendreSpec(3, {0}),
                                                             s_guess);
        double worst_comp = 0.0;
        for (int it = 0; it < 5; ++it) {
          for (int ip = 0; ip < 5; ++ip) {
            st::Vec y(3);
            y << 0.5 + 0.1 * it, -(0.4 + 0.1 * ip), 1.0;
            const double direct = gibbs.value(y);
            worst_comp =
                std::max(worst_comp, rel(enthalpy_of_helmholtz.value(y) - direct, direct));
            worst_comp =
                std::max(worst_comp, rel(helmholtz_of_enthalpy.value(y) - direct, direct));
          }
        }

        st::Vec q_ref(3);
        q_ref << 0.0, 1.0, 1.0;
        const double reg =
            st::regularity_indicator(*f.gas, st::hydrostatic_preset("helmholtz"), q_ref);
        const double reg_dev = std::abs(reg - 4.0 / 9.0);

        const bool pass = worst_inv <= 1e-10 && worst_grad <= 1e-8 && worst_comp <= 1e-10 &&
                          reg_dev <= 1e-10;
        return {pass, "involution " + sci(worst_inv) + " (bound 1e-10), gradient relations " +
                          sci(worst_grad) + " (bound 1e-08), composition " + sci(worst_comp) +
                          " (bound 1e-10), regularity-value error " + sci(reg_dev) +
                          " (bound 1e-10)"};
      }));

  run_criterion(
      10, "the Legendre chart change pushes the flow forward consistently",
      with_flows([](const Flows& f) -> Outcome {
        st::Vec q0(3);
        q0 << 0.5, 1.0, 1.0;
        const double defect = st::pushforward_check(
            *f.gas, st::ProcessSpec(st::Chart::hydrostatic(), {"S", "0", "N"}),
            st::hydrostatic_preset("helmholtz"), q0, 0.5, 1e-3);
        bool flagged = false;
        try {
          const st::LinearPotential flat;
          (void)st::pushforward_check(flat, st::ProcessSpec::zero(st::Chart::hydrostatic()),
                                      st::hydrostatic_preset("helmholtz"), q0, 0.1, 1e-2);
        } catch (const st::RegularityError&) {
          flagged = true;
        }
        const bool pass = defect <= 1e-4 && flagged;
        return {pass, "tangent defect " + sci(defect) + " (bound 1e-04), flat generator " +
                          (flagged ? std::string("rejected as singular") :
                                     std::string("NOT rejected"))};
      }));

  run_criterion(
      11, "entropy and energy representations invert each other",
      with_flows([](const Flows& f) -> Outcome {
        std::mt19937_64 gen(424242);
        std::uniform_real_distribution<double> pos(0.2, 5.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
          const double e = pos(gen);
          const double v = pos(gen);
          const double n = pos(gen);
          const double s = st::ideal_gas_entropy(f.params, e, v, n);
          st::Vec q(3);
          q << s, v, n;
          worst = std::max(worst, rel(f.gas->value(q) - e, e));
          const st::Vec qr = random_q(gen);
          const double s2 = st::ideal_gas_entropy(f.params, f.gas->value(qr), qr[1], qr[2]);
          worst = std::max(worst, rel(s2 - qr[0], qr[0]));
        }
        return {worst <= 1e-12, "max scaled round-trip error " + sci(worst) + ", bound 1e-12"};
      }));

  run_criterion(12, "the CLI honors its exit-code and byte-exact CSV contracts", []() -> Outcome {
    const fs::path root = fs::temp_directory_path() / "symthermo-acceptance-cli";
    fs::remove_all(root);
    fs::create_directories(root);
    const auto write = [&](const std::string& name, const std::string& text) {
      const fs::path p = root / name;
      std::ofstream out(p, std::ios::binary);
      out << text;
      return p;
    };
    const fs::path good = write("good.json", R"json({
      "system": {"potential": "ideal_gas"},
      "hamiltonian": {"type": "isochoric"},
      "initial": {"q": [0.5, 1.0, 1.0]},
      "integrator": {"dt": 1e-3, "steps": 500}
    })json");
    std::string broken_text = slurp(good);
    broken_text.replace(broken_text.find("\"steps\": 500"), 12, "\"steps\": 0");
    const fs::path broken = write("broken.json", broken_text);
    const fs::path blowup = write("blowup.json", R"json({
      "system": {"potential": "ideal_gas"},
      "hamiltonian": {"type": "general_process", "X": ["0", "-1", "0"]},
      "initial": {"q": [0.0, 1.0, 1.0]},
      "integrator": {"dt": 0.5, "steps": 4}
    })json");

    const int ok = spawn_cli("--out-dir '" + (root / "a").string() + "' --quiet simulate '" +
                                 good.string() + "'",
                             root / "cap0.txt");
    const int ok2 = spawn_cli("--out-dir '" + (root / "b").string() + "' --quiet simulate '" +
                                  good.string() + "'",
                              root / "cap0b.txt");
    const int failed_check =
        spawn_cli("--out-dir '" + root.string() + "' check selftest", root / "cap1.txt");
    const int bad_config = spawn_cli("--out-dir '" + root.string() + "' --quiet simulate '" +
                                         broken.string() + "'",
                                     root / "cap2.txt");
    const int runtime = spawn_cli("--out-dir '" + root.string() + "' --quiet simulate '" +
                                      blowup.string() + "'",
                                  root / "cap3.txt");

    const std::string csv_a = slurp(root / "a" / "trajectory.csv");
    const std::string csv_b = slurp(root / "b" / "trajectory.csv");
    const bool header_ok =
        csv_a.rfind(std::string(st::kTrajectoryCsvHeader) + "\n", 0) == 0;
    const bool bytes_ok = !csv_a.empty() && csv_a == csv_b;
    const bool pass = ok == 0 && ok2 == 0 && failed_check == 1 && bad_config == 2 &&
                      runtime == 3 && header_ok && bytes_ok;
    std::ostringstream detail;
    detail << "exit codes " << ok << "/" << failed_check << "/" << bad_config << "/" << runtime
           << " vs expected 0/1/2/3, header " << (header_ok ? "exact" : "WRONG")
           << ", rerun bytes " << (bytes_ok ? "identical" : "DIFFER");
    fs::remove_all(root);
    return {pass, detail.str()};
  });

  std::printf("%d/12 criteria passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
