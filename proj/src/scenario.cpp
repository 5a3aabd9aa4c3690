#include "symthermo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "symthermo/csv.hpp"
#include "symthermo/dynamics.hpp"
#include "symthermo/ensembles.hpp"

namespace symthermo {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string join_key(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path, what);
}

void reject_unknown_keys(const json& sec, const std::string& prefix,
                         const std::vector<std::string>& allowed) {
  for (auto it = sec.begin(); it != sec.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      fail(join_key(prefix, it.key()), "unknown key '" + join_key(prefix, it.key()) + "'");
    }
  }
}

void reject_unknown_keys(const json& sec, const std::string& prefix,
                         std::initializer_list<const char*> allowed) {
  reject_unknown_keys(sec, prefix, std::vector<std::string>(allowed.begin(), allowed.end()));
}

const json* find(const json& sec, const std::string& key) {
  auto it = sec.find(key);
  return it == sec.end() ? nullptr : &*it;
}

const json& object_at(const json& sec, const std::string& prefix, const char* key) {
  const json* v = find(sec, key);
  if (!v) fail(join_key(prefix, key), "missing required section '" + join_key(prefix, key) + "'");
  if (!v->is_object())
    fail(join_key(prefix, key), "'" + join_key(prefix, key) + "' must be an object");
  return *v;
}

double number_at(const json& sec, const std::string& prefix, const std::string& key,
                 std::optional<double> fallback = std::nullopt) {
  const json* v = find(sec, key);
  if (!v) {
    if (fallback) return *fallback;
    fail(join_key(prefix, key), "missing required number '" + join_key(prefix, key) + "'");
  }
  if (!v->is_number())
    fail(join_key(prefix, key), "'" + join_key(prefix, key) + "' must be a number");
  return v->get<double>();
}

long integer_at(const json& sec, const std::string& prefix, const std::string& key,
                std::optional<long> fallback = std::nullopt) {
  const json* v = find(sec, key);
  if (!v) {
    if (fallback) return *fallback;
    fail(join_key(prefix, key), "missing required integer '" + join_key(prefix, key) + "'");
  }
  if (!v->is_number_integer())
    fail(join_key(prefix, key), "'" + join_key(prefix, key) + "' must be an integer");
  return static_cast<long>(v->get<long long>());
}

std::string string_at(const json& sec, const std::string& prefix, const std::string& key,
                      std::optional<std::string> fallback = std::nullopt) {
  const json* v = find(sec, key);
  if (!v) {
    if (fallback) return *fallback;
    fail(join_key(prefix, key), "missing required string '" + join_key(prefix, key) + "'");
  }
  if (!v->is_string())
    fail(join_key(prefix, key), "'" + join_key(prefix, key) + "' must be a string");
  return v->get<std::string>();
}

bool bool_at(const json& sec, const std::string& prefix, const std::string& key, bool fallback) {
  const json* v = find(sec, key);
  if (!v) return fallback;
  if (!v->is_boolean())
    fail(join_key(prefix, key), "'" + join_key(prefix, key) + "' must be true or false");
  return v->get<bool>();
}

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config",
                      "config file '" + path + "' is not well-formed JSON: " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config", "config root must be an object");
  return root;
}

std::string fmt_g(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string fmt_sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

fs::path resolve_artifact(const std::string& out_dir, const std::string& name) {
  fs::path p(name);
  if (!p.is_absolute()) p = fs::path(out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error("failed while writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// simulate

PotentialPtr parse_system(const json& root, std::optional<IdealGasParams>* gas_out) {
  const json& sec = object_at(root, "", "system");
  const std::string kind = string_at(sec, "system", "potential", std::string("ideal_gas"));
  if (kind == "ideal_gas") {
    reject_unknown_keys(sec, "system", {"potential", "A", "C"});
    const double A = number_at(sec, "system", "A", 1.0);
    const double C = number_at(sec, "system", "C", 1.5);
    try {
      IdealGasParams params(A, C);
      *gas_out = params;
      return std::make_shared<IdealGasPotential>(params);
    } catch (const DomainError& e) {
      fail("system." + e.coordinate(), e.what());
    }
  }
  if (kind == "linear") {
    reject_unknown_keys(sec, "system", {"potential", "coeffs"});
    std::vector<double> coeffs;
    if (const json* c = find(sec, "coeffs")) {
      if (!c->is_array()) fail("system.coeffs", "'system.coeffs' must be an array of numbers");
      for (const auto& x : *c) {
        if (!x.is_number()) fail("system.coeffs", "'system.coeffs' must be an array of numbers");
        coeffs.push_back(x.get<double>());
      }
    }
    gas_out->reset();
    try {
      return std::make_shared<LinearPotential>(Chart::hydrostatic(), std::move(coeffs));
    } catch (const Error& e) {
      fail("system.coeffs", e.what());
    }
  }
  fail("system.potential", "unknown potential '" + kind + "' (ideal_gas, linear)");
}

HamiltonianPtr parse_hamiltonian(const json& root, const PotentialPtr& phi,
                                 const std::optional<IdealGasParams>& gas, std::string* type_out,
                                 double* a_out, double* b_out) {
  const json& sec = object_at(root, "", "hamiltonian");
  const std::string type = string_at(sec, "hamiltonian", "type");
  *type_out = type;
  const double lambda = number_at(sec, "hamiltonian", "lambda", 0.0);
  if (type == "isochoric" || type == "isothermal_isochoric") {
    reject_unknown_keys(sec, "hamiltonian", {"type", "lambda"});
    if (!gas)
      fail("hamiltonian.type", "'" + type + "' needs the ideal_gas system potential");
    return type == "isochoric" ? isochoric_hamiltonian(*gas, lambda)
                               : isothermal_isochoric_hamiltonian(*gas, lambda);
  }
  if (type == "general_process") {
    reject_unknown_keys(sec, "hamiltonian", {"type", "lambda", "X"});
    const json* x = find(sec, "X");
    if (!x || !x->is_array())
      fail("hamiltonian.X",
           "'hamiltonian.X' must be an array of expressions, one per base coordinate");
    std::vector<std::string> comps;
    for (const auto& e : *x) {
      if (!e.is_string()) fail("hamiltonian.X", "'hamiltonian.X' entries must be strings");
      comps.push_back(e.get<std::string>());
    }
    if (comps.size() != phi->dim())
      fail("hamiltonian.X",
           "'hamiltonian.X' needs exactly " + std::to_string(phi->dim()) + " components");
    try {
      return general_process_hamiltonian(phi, ProcessSpec(phi->chart(), std::move(comps)),
                                         lambda);
    } catch (const ConfigError& e) {
      fail("hamiltonian.X", e.what());
    }
  }
  if (type == "interacting") {
    reject_unknown_keys(sec, "hamiltonian", {"type", "lambda", "a", "b"});
    *a_out = number_at(sec, "hamiltonian", "a", 0.0);
    *b_out = number_at(sec, "hamiltonian", "b", 0.0);
    return interacting_map_hamiltonian(*a_out, *b_out, lambda);
  }
  fail("hamiltonian.type",
       "unknown hamiltonian type '" + type +
           "' (isochoric, isothermal_isochoric, general_process, interacting)");
}

struct InitialState {
  PhasePoint x;
  bool embedded;
  double onshell;
};

InitialState parse_initial(const json& root, const Potential& phi) {
  const json& sec = object_at(root, "", "initial");
  reject_unknown_keys(sec, "initial", {"q", "state"});
  const json* qj = find(sec, "q");
  const json* st = find(sec, "state");
  if (!!qj == !!st) fail("initial", "'initial' needs exactly one of 'q' or 'state'");
  const Chart& chart = *phi.chart();
  const auto n = static_cast<Eigen::Index>(chart.dim());
  if (qj) {
    std::string arity;
    for (std::size_t i = 0; i < chart.dim(); ++i)
      arity += (i ? ", " : "") + chart.q_names()[i];
    if (!qj->is_array() || static_cast<Eigen::Index>(qj->size()) != n)
      fail("initial.q", "'initial.q' must be an array of " + std::to_string(n) + " numbers (" +
                            arity + ")");
    Vec q(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& e = (*qj)[static_cast<std::size_t>(i)];
      if (!e.is_number()) fail("initial.q", "'initial.q' entries must be numbers");
      q[i] = e.get<double>();
    }
    try {
      return {embed(phi, q), true, 0.0};
    } catch (const DomainError& e) {
      fail("initial.q", e.what());
    } catch (const NonFiniteError& e) {
      fail("initial.q", e.what());
    }
  }
  if (!st->is_object()) fail("initial.state", "'initial.state' must be an object");
  std::vector<std::string> allowed = chart.q_names();
  allowed.insert(allowed.end(), chart.p_display_names().begin(), chart.p_display_names().end());
  reject_unknown_keys(*st, "initial.state", allowed);
  Vec q(n), p(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    q[i] = number_at(*st, "initial.state", chart.q_names()[k]);
    p[i] = chart.p_display_sign(k) * number_at(*st, "initial.state", chart.p_display_names()[k]);
  }
  try {
    (void)phi.value(q);
  } catch (const DomainError& e) {
    fail("initial.state." + e.coordinate(), e.what());
  }
  PhasePoint x(phi.chart(), std::move(q), std::move(p));
  const double resid = onshell_residual(phi, x);
  return {std::move(x), false, resid};
}

IntegratorConfig parse_integrator(const json& root) {
  const json& sec = object_at(root, "", "integrator");
  reject_unknown_keys(sec, "integrator",
                      {"method", "dt", "steps", "fixed_point_tol", "max_fixed_point_iters"});
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::method_from_string(
      string_at(sec, "integrator", "method", std::string("implicit_midpoint")));
  cfg.dt = number_at(sec, "integrator", "dt");
  cfg.steps = integer_at(sec, "integrator", "steps");
  cfg.fixed_point_tol = number_at(sec, "integrator", "fixed_point_tol", cfg.fixed_point_tol);
  cfg.max_fixed_point_iters = static_cast<int>(integer_at(
      sec, "integrator", "max_fixed_point_iters", static_cast<long>(cfg.max_fixed_point_iters)));
  cfg.validate();
  return cfg;
}

struct ParsedScenario {
  PotentialPtr phi;
  HamiltonianPtr hamiltonian;
  std::string hamiltonian_type;
  InitialState initial;
  IntegratorConfig integrator;
  bool compare_closed_form;
  std::optional<IdealGasParams> gas;
  double a;
  double b;
  std::string csv_name;
  std::string report_name;
};

ParsedScenario parse_scenario(const json& root) {
  if (!root.is_object()) fail("config", "scenario config root must be an object");
  reject_unknown_keys(
      root, "",
      {"system", "hamiltonian", "initial", "integrator", "outputs", "compare_closed_form"});
  std::optional<IdealGasParams> gas;
  PotentialPtr phi = parse_system(root, &gas);
  std::string type;
  double a = 0.0;
  double b = 0.0;
  HamiltonianPtr H = parse_hamiltonian(root, phi, gas, &type, &a, &b);
  InitialState init = parse_initial(root, *phi);
  IntegratorConfig cfg = parse_integrator(root);
  std::string csv_name = "trajectory.csv";
  std::string report_name = "report.txt";
  if (const json* out = find(root, "outputs")) {
    if (!out->is_object()) fail("outputs", "'outputs' must be an object");
    reject_unknown_keys(*out, "outputs", {"csv", "report"});
    csv_name = string_at(*out, "outputs", "csv", csv_name);
    report_name = string_at(*out, "outputs", "report", report_name);
  }
  const bool has_reference = type != "general_process";
  const bool compare = bool_at(root, "", "compare_closed_form", has_reference);
  if (compare && !has_reference)
    fail("compare_closed_form",
         "no closed-form reference exists for hamiltonian.type 'general_process'");
  return {std::move(phi), std::move(H),  std::move(type), std::move(init), cfg, compare,
          gas,            a,             b,               std::move(csv_name),
          std::move(report_name)};
}

ClosedFormMap reference_map(const ParsedScenario& sc) {
  if (!sc.compare_closed_form) return {};
  const PhasePoint x0 = sc.initial.x;
  if (sc.hamiltonian_type == "isochoric") {
    const IdealGasParams params = *sc.gas;
    return [x0, params](double t) { return closed_form_isochoric(x0, params, t); };
  }
  if (sc.hamiltonian_type == "isothermal_isochoric") {
    const IdealGasParams params = *sc.gas;
    return [x0, params](double t) { return closed_form_isothermal_isochoric(x0, params, t); };
  }
  const double e0 = sc.phi->value(x0.q());
  const double a = sc.a;
  const double b = sc.b;
  return [x0, e0, a, b](double t) { return closed_form_interacting(x0, e0, a, b, t); };
}

std::string simulate_report(const ParsedScenario& sc, const std::string& config_label,
                            const Trajectory& traj, const DiagnosticsReport& diag) {
  const Chart& chart = *sc.phi->chart();
  std::ostringstream os;
  os << "simulate report\n";
  os << "---------------\n";
  os << "config      : " << config_label << "\n";
  os << "system      : " << sc.phi->describe() << "\n";
  os << "hamiltonian : " << sc.hamiltonian->describe() << "\n";
  if (sc.initial.embedded) {
    os << "initial     : embedded from base coordinates (";
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      if (i) os << ", ";
      os << chart.q_names()[i] << "=" << fmt_g(sc.initial.x.q()[static_cast<Eigen::Index>(i)]);
    }
    os << ")\n";
  } else {
    os << "initial     : full phase-space state, on-shell residual "
       << fmt_sci(sc.initial.onshell) << "\n";
    if (sc.initial.onshell > 1e-10) {
      os << "warning     : initial state is off the equilibrium submanifold (residual "
         << fmt_sci(sc.initial.onshell) << " > 1e-10)\n";
    }
  }
  os << "integrator  : " << traj.config.describe() << "\n";
  os << "samples     : " << traj.samples.size() << " over t in [0, " << fmt_g(traj.back().t)
     << "]\n";
  os << "trajectory  : " << sc.csv_name << "\n";
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double prev = traj.samples[i - 1].x.p_display(1);
    const double cur = traj.samples[i].x.p_display(1);
    if ((prev > 0.0 && cur <= 0.0) || (prev < 0.0 && cur >= 0.0)) {
      os << "warning     : P(t) crosses zero near t = " << fmt_g(traj.samples[i].t)
         << "; the state leaves the physical pressure range there\n";
      break;
    }
  }
  os << "\n";
  os << "diagnostics\n";
  os << "-----------\n";
  os << diag.summary();
  os << "closed-form reference: "
     << (diag.closed_form_compared ? "exact " + sc.hamiltonian_type + " solution" : "none")
     << "\n";
  os << "status: ok\n";
  return os.str();
}

struct SimulationArtifacts {
  Trajectory trajectory;
  DiagnosticsReport diagnostics;
  fs::path csv_path;
  fs::path report_path;
};

SimulationArtifacts run_scenario(const ParsedScenario& sc, const std::string& out_dir,
                                 const std::string& config_label, bool quiet, std::ostream& log) {
  Trajectory traj = integrate(sc.hamiltonian, sc.initial.x, sc.integrator);
  DiagnosticsReport diag = diagnose(traj, *sc.phi, reference_map(sc));
  const fs::path csv_path = resolve_artifact(out_dir, sc.csv_name);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, *sc.phi);
  write_text_file(csv_path, csv.str());
  const fs::path report_path = resolve_artifact(out_dir, sc.report_name);
  write_text_file(report_path, simulate_report(sc, config_label, traj, diag));
  if (!quiet) {
    log << "wrote " << csv_path.string() << " (" << traj.samples.size() << " samples)\n";
    log << "wrote " << report_path.string() << "\n";
    log << diag.summary();
  }
  return {std::move(traj), std::move(diag), csv_path, report_path};
}

// ---------------------------------------------------------------------------
// legendre

struct LegendreScenario {
  PotentialPtr phi;
  LegendreSpec spec;
  std::vector<std::string> input_names;  // per chart slot: K slots show momenta
  std::vector<Vec> display_points;       // slot-ordered, display convention
  Vec guess;                             // per K slot
  NewtonSettings settings;
  std::string csv_name;
};

LegendreScenario parse_legendre(const json& root) {
  reject_unknown_keys(root, "",
                      {"system", "transform", "points", "grid", "guess", "newton", "outputs"});
  std::optional<IdealGasParams> gas;
  PotentialPtr phi = parse_system(root, &gas);
  const Chart& chart = *phi->chart();
  const std::size_t n = chart.dim();

  const json& tsec = object_at(root, "", "transform");
  reject_unknown_keys(tsec, "transform", {"preset", "K"});
  const json* preset = find(tsec, "preset");
  const json* kset = find(tsec, "K");
  if (!!preset == !!kset) fail("transform", "'transform' needs exactly one of 'preset' or 'K'");
  LegendreSpec spec = [&]() -> LegendreSpec {
    if (preset) {
      if (!preset->is_string()) fail("transform.preset", "'transform.preset' must be a string");
      return hydrostatic_preset(preset->get<std::string>());
    }
    if (!kset->is_array() || kset->empty())
      fail("transform.K", "'transform.K' must be a non-empty array of base coordinate names");
    std::vector<std::size_t> idx;
    for (const auto& e : *kset) {
      if (!e.is_string()) fail("transform.K", "'transform.K' entries must be coordinate names");
      const int i = chart.q_index(e.get<std::string>());
      if (i < 0)
        fail("transform.K", "'" + e.get<std::string>() + "' is not a base coordinate of chart '" +
                                chart.name() + "'");
      idx.push_back(static_cast<std::size_t>(i));
    }
    try {
      return LegendreSpec(n, std::move(idx));
    } catch (const Error& e) {
      fail("transform.K", e.what());
    }
  }();

  NewtonSettings settings;
  if (const json* nw = find(root, "newton")) {
    if (!nw->is_object()) fail("newton", "'newton' must be an object");
    reject_unknown_keys(*nw, "newton", {"tol", "max_iters", "regularity_threshold"});
    settings.tol = number_at(*nw, "newton", "tol", settings.tol);
    settings.max_iters =
        static_cast<int>(integer_at(*nw, "newton", "max_iters", settings.max_iters));
    settings.regularity_threshold =
        number_at(*nw, "newton", "regularity_threshold", settings.regularity_threshold);
  }

  std::vector<bool> is_k(n, false);
  for (std::size_t k : spec.K) is_k[k] = true;
  std::vector<std::string> input_names(n);
  for (std::size_t i = 0; i < n; ++i)
    input_names[i] = is_k[i] ? chart.p_display_names()[i] : chart.q_names()[i];

  const json* pts = find(root, "points");
  const json* grid = find(root, "grid");
  if (!!pts == !!grid) fail("points", "exactly one of 'points' or 'grid' is required");
  std::vector<Vec> display_points;
  if (pts) {
    if (!pts->is_array() || pts->empty())
      fail("points", "'points' must be a non-empty array of coordinate objects");
    for (std::size_t k = 0; k < pts->size(); ++k) {
      const std::string path = "points[" + std::to_string(k) + "]";
      const json& obj = (*pts)[k];
      if (!obj.is_object()) fail(path, "'" + path + "' must be an object of input coordinates");
      reject_unknown_keys(obj, path, input_names);
      Vec d(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i)
        d[static_cast<Eigen::Index>(i)] = number_at(obj, path, input_names[i]);
      display_points.push_back(std::move(d));
    }
  } else {
    if (!grid->is_object())
      fail("grid", "'grid' must be an object keyed by input coordinate names");
    reject_unknown_keys(*grid, "grid", input_names);
    std::vector<std::vector<double>> axes(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string path = "grid." + input_names[i];
      const json* e = find(*grid, input_names[i]);
      if (!e) fail(path, "missing grid entry for input coordinate '" + input_names[i] + "'");
      if (e->is_number()) {
        axes[i] = {e->get<double>()};
      } else if (e->is_object()) {
        reject_unknown_keys(*e, path, {"from", "to", "count"});
        const double from = number_at(*e, path, "from");
        const double to = number_at(*e, path, "to");
        const long count = integer_at(*e, path, "count");
        if (count < 1) fail(path + ".count", "'" + path + ".count' must be at least 1");
        if (count == 1) {
          axes[i] = {from};
        } else {
          for (long j = 0; j < count; ++j)
            axes[i].push_back(from + (to - from) * static_cast<double>(j) /
                                         static_cast<double>(count - 1));
        }
      } else {
        fail(path, "'" + path + "' must be a number or a {from, to, count} range");
      }
    }
    std::size_t total = 1;
    for (const auto& axis : axes) total *= axis.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      Vec d(static_cast<Eigen::Index>(n));
      std::size_t rem = idx;
      for (std::size_t i = n; i-- > 0;) {  // last slot varies fastest
        d[static_cast<Eigen::Index>(i)] = axes[i][rem % axes[i].size()];
        rem /= axes[i].size();
      }
      display_points.push_back(std::move(d));
    }
  }

  Vec guess(static_cast<Eigen::Index>(spec.K.size()));
  for (std::size_t i = 0; i < spec.K.size(); ++i)
    guess[static_cast<Eigen::Index>(i)] = chart.q_names()[spec.K[i]] == "S" ? 0.0 : 1.0;
  if (const json* g = find(root, "guess")) {
    if (!g->is_object()) fail("guess", "'guess' must be an object keyed by transformed names");
    std::vector<std::string> k_names;
    for (std::size_t k : spec.K) k_names.push_back(chart.q_names()[k]);
    reject_unknown_keys(*g, "guess", k_names);
    for (std::size_t i = 0; i < spec.K.size(); ++i) {
      const auto ei = static_cast<Eigen::Index>(i);
      guess[ei] = number_at(*g, "guess", k_names[i], guess[ei]);
    }
  }

  std::string csv_name = "legendre.csv";
  if (const json* out = find(root, "outputs")) {
    if (!out->is_object()) fail("outputs", "'outputs' must be an object");
    reject_unknown_keys(*out, "outputs", {"csv"});
    csv_name = string_at(*out, "outputs", "csv", csv_name);
  }

  return {std::move(phi), std::move(spec),     std::move(input_names),
          std::move(display_points), std::move(guess), settings,
          std::move(csv_name)};
}

// ---------------------------------------------------------------------------
// sweep

void apply_parameter(json& cfg, const std::string& dotted, double value) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : dotted) {
    if (c == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  for (const auto& part : parts) {
    if (part.empty())
      fail("sweep.parameter", "'sweep.parameter' must be a dotted path of non-empty keys");
  }
  json* node = &cfg;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& next = (*node)[parts[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object())
      fail("sweep.parameter",
           "path segment '" + parts[i] + "' of '" + dotted + "' does not address a section");
    node = &next;
  }
  (*node)[parts.back()] = value;
}

}  // namespace

int run_simulate(const std::string& config_path, const std::string& out_dir, bool quiet,
                 std::ostream& log) {
  const json root = load_json(config_path);
  const ParsedScenario sc = parse_scenario(root);
  run_scenario(sc, out_dir, config_path, quiet, log);
  return 0;
}

int run_legendre(const std::string& config_path, const std::string& out_dir, bool quiet,
                 std::ostream& log) {
  const json root = load_json(config_path);
  const LegendreScenario sc = parse_legendre(root);
  const Chart& chart = *sc.phi->chart();
  const std::size_t n = chart.dim();
  const LegendreSpec& spec = sc.spec;

  std::ostringstream csv;
  for (std::size_t i = 0; i < n; ++i) csv << sc.input_names[i] << ",";
  for (std::size_t k : spec.K) csv << chart.q_names()[k] << ",";
  csv << "Psi,regularity\n";

  const fs::path csv_path = resolve_artifact(out_dir, sc.csv_name);
  Vec guess = sc.guess;
  for (std::size_t pi = 0; pi < sc.display_points.size(); ++pi) {
    const Vec& d = sc.display_points[pi];
    Vec q_J(static_cast<Eigen::Index>(spec.J.size()));
    Vec p_K(static_cast<Eigen::Index>(spec.K.size()));
    for (std::size_t j = 0; j < spec.J.size(); ++j)
      q_J[static_cast<Eigen::Index>(j)] = d[static_cast<Eigen::Index>(spec.J[j])];
    for (std::size_t k = 0; k < spec.K.size(); ++k)
      p_K[static_cast<Eigen::Index>(k)] =
          chart.p_display_sign(spec.K[k]) * d[static_cast<Eigen::Index>(spec.K[k])];
    try {
      const LegendreResult res = legendre_eval(*sc.phi, spec, q_J, p_K, guess, sc.settings);
      Vec q_full(static_cast<Eigen::Index>(n));
      for (std::size_t j = 0; j < spec.J.size(); ++j)
        q_full[static_cast<Eigen::Index>(spec.J[j])] = q_J[static_cast<Eigen::Index>(j)];
      for (std::size_t k = 0; k < spec.K.size(); ++k)
        q_full[static_cast<Eigen::Index>(spec.K[k])] = res.q_K[static_cast<Eigen::Index>(k)];
      const double reg = regularity_indicator(*sc.phi, spec, q_full);
      for (Eigen::Index i = 0; i < d.size(); ++i) csv << format_double(d[i]) << ",";
      for (Eigen::Index k = 0; k < res.q_K.size(); ++k) csv << format_double(res.q_K[k]) << ",";
      csv << format_double(res.psi) << "," << format_double(reg) << "\n";
      guess = res.q_K;  // continuation: warm-start the next point
    } catch (const Error& e) {
      write_text_file(csv_path, csv.str());
      std::ostringstream msg;
      msg << "legendre solve failed at point " << pi << " (";
      for (std::size_t i = 0; i < n; ++i) {
        if (i) msg << ", ";
        msg << sc.input_names[i] << "=" << fmt_g(d[static_cast<Eigen::Index>(i)]);
      }
      msg << "): " << e.what();
      throw Error(msg.str());
    }
  }
  write_text_file(csv_path, csv.str());
  if (!quiet)
    log << "wrote " << csv_path.string() << " (" << sc.display_points.size() << " points)\n";
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_dir, bool quiet,
              std::ostream& log) {
  const json root = load_json(config_path);
  reject_unknown_keys(root, "", {"base", "sweep", "outputs"});
  const json& base = object_at(root, "", "base");
  const json& sw = object_at(root, "", "sweep");
  reject_unknown_keys(sw, "sweep", {"parameter", "values"});
  const std::string parameter = string_at(sw, "sweep", "parameter");
  const json* vals = find(sw, "values");
  if (!vals || !vals->is_array())
    fail("sweep.values", "'sweep.values' must be an array of numbers");
  if (vals->empty()) fail("sweep.values", "'sweep.values' must be non-empty");
  std::vector<double> values;
  for (const auto& v : *vals) {
    if (!v.is_number()) fail("sweep.values", "'sweep.values' entries must be numbers");
    values.push_back(v.get<double>());
  }

  std::string dir_name = "sweep";
  std::string summary_name = "summary.csv";
  if (const json* out = find(root, "outputs")) {
    if (!out->is_object()) fail("outputs", "'outputs' must be an object");
    reject_unknown_keys(*out, "outputs", {"directory", "summary"});
    dir_name = string_at(*out, "outputs", "directory", dir_name);
    summary_name = string_at(*out, "outputs", "summary", summary_name);
  }

  struct Tuple {
    std::optional<ParsedScenario> scenario;
    std::string error;
  };
  std::vector<Tuple> tuples;
  for (double v : values) {
    json cfg = base;
    apply_parameter(cfg, parameter, v);
    try {
      tuples.push_back({parse_scenario(cfg), {}});
    } catch (const ConfigError& e) {
      tuples.push_back({std::nullopt, std::string("config: ") + e.what()});
    }
  }
  if (std::none_of(tuples.begin(), tuples.end(),
                   [](const Tuple& t) { return t.scenario.has_value(); })) {
    fail("sweep", "every sweep tuple is invalid; first error: " + tuples.front().error);
  }

  fs::path sweep_dir(dir_name);
  if (!sweep_dir.is_absolute()) sweep_dir = fs::path(out_dir) / sweep_dir;
  fs::create_directories(sweep_dir);

  std::ostringstream summary;
  summary << "index,value,ok,t_final,S,V,N,T,P,mu,E,"
          << "hamiltonian_drift,onshell,eos,euler,closed_form_dev\n";
  std::vector<std::string> failures;
  int succeeded = 0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    std::ostringstream run_name;
    run_name << "run_" << std::setw(3) << std::setfill('0') << i;
    const std::string label =
        config_path + " [" + parameter + "=" + fmt_g(values[i]) + "]";
    std::string error = tuples[i].error;
    std::optional<SimulationArtifacts> art;
    if (tuples[i].scenario) {
      try {
        const fs::path run_dir = sweep_dir / run_name.str();
        fs::create_directories(run_dir);
        art = run_scenario(*tuples[i].scenario, run_dir.string(), label, true, log);
        ++succeeded;
      } catch (const Error& e) {
        error = e.what();
        art.reset();
      }
    }
    summary << i << "," << format_double(values[i]) << ",";
    if (art) {
      const TrajectorySample& last = art->trajectory.back();
      const PhasePoint& x = last.x;
      const double e_final = tuples[i].scenario->phi->value(x.q());
      double cf_dev = std::numeric_limits<double>::quiet_NaN();
      if (art->diagnostics.closed_form_compared) {
        cf_dev = 0.0;
        for (const auto& [key, dev] : art->diagnostics.closed_form_deviation)
          cf_dev = std::max(cf_dev, dev);
      }
      const double row[] = {last.t,
                            x.q()[0],
                            x.q()[1],
                            x.q()[2],
                            x.p_display(0),
                            x.p_display(1),
                            x.p_display(2),
                            e_final,
                            art->diagnostics.max_hamiltonian_drift,
                            art->diagnostics.max_onshell,
                            art->diagnostics.max_eos,
                            art->diagnostics.max_euler,
                            cf_dev};
      summary << "1";
      for (double field : row) summary << "," << format_double(field);
      summary << "\n";
    } else {
      summary << "0";
      for (int f = 0; f < 13; ++f) summary << ",nan";
      summary << "\n";
      failures.push_back("tuple " + std::to_string(i) + " (" + parameter + "=" +
                         fmt_g(values[i]) + "): " + error);
    }
    if (!quiet) {
      log << "tuple " << i << " (" << parameter << "=" << fmt_g(values[i])
          << "): " << (art ? "ok" : "failed: " + error) << "\n";
    }
  }
  write_text_file(sweep_dir / summary_name, summary.str());
  if (!failures.empty()) {
    std::string text;
    for (const auto& f : failures) text += f + "\n";
    write_text_file(sweep_dir / "failures.txt", text);
  }
  if (!quiet) log << "wrote " << (sweep_dir / summary_name).string() << "\n";
  return succeeded > 0 ? 0 : 3;
}

}  // namespace symthermo
