// End-to-end coverage of the installed binary: every documented exit code,
// the byte-level CSV contract, and a few numeric endpoints checked against
// the library running in-process. The binary path comes in as a compile
// definition so the tests always exercise the matching build.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "symthermo/csv.hpp"
#include "symthermo/ensembles.hpp"
#include "symthermo/potential.hpp"

namespace st = symthermo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;

  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = fs::temp_directory_path() / ("symthermo-cli-" + tag + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code;
  std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const TempDir& dir, const std::string& args) {
  static int counter = 0;
  const fs::path capture = dir.path / ("cli-capture-" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(SYMTHERMO_CLI_PATH) + " " + args + " > '" +
                          capture.string() + "' 2>&1";
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), slurp(capture)};
}

std::vector<std::vector<double>> load_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return st::read_csv(in, header);
}

constexpr const char* kIsochoricConfig = R"json({
  "system": {"potential": "ideal_gas", "A": 1.0, "C": 1.5},
  "hamiltonian": {"type": "isochoric"},
  "initial": {"q": [0.0, 1.0, 1.0]},
  "integrator": {"dt": 1e-3, "steps": 500}
})json";

}  // namespace

TEST_CASE("cli simulate: exit 0, exact header, reference endpoint, reproducible bytes") {
  TempDir dir("simulate");
  const fs::path cfg = write_file(dir.path, "config.json", kIsochoricConfig);
  const fs::path out_a = dir.path / "a";
  const fs::path out_b = dir.path / "b";

  const CliResult quiet =
      run_cli(dir, "--out-dir '" + out_a.string() + "' --quiet simulate '" + cfg.string() + "'");
  CHECK(quiet.code == 0);
  CHECK(quiet.output.empty());

  const std::string csv_text = slurp(out_a / "trajectory.csv");
  CHECK(csv_text.rfind("t,S,V,N,T,P,mu,E,H,onshell,eos,euler\n", 0) == 0);

  // Endpoint at t = 0.5 against the exponential reference solution, frozen
  // to full precision; second-order integration sits well inside 1e-5.
  const auto rows = load_csv(out_a / "trajectory.csv");
  REQUIRE(rows.size() == 501);
  const auto& last = rows.back();
  CHECK(last[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(last[3] == doctest::Approx(1.6487212707001282).epsilon(1e-5));   // N
  CHECK(last[4] == doctest::Approx(0.9304082833907263).epsilon(1e-5));   // T
  CHECK(last[5] == doctest::Approx(1.5339839272618834).epsilon(1e-5));   // P
  CHECK(last[6] == doctest::Approx(2.3260207084768158).epsilon(1e-5));   // mu
  CHECK(last[7] == doctest::Approx(2.3009758908928246).epsilon(1e-5));   // E
  CHECK(slurp(out_a / "report.txt").find("status: ok") != std::string::npos);

  // Identical inputs, identical bytes.
  const CliResult rerun =
      run_cli(dir, "--out-dir '" + out_b.string() + "' --quiet simulate '" + cfg.string() + "'");
  CHECK(rerun.code == 0);
  CHECK(slurp(out_b / "trajectory.csv") == csv_text);
  CHECK(slurp(out_b / "report.txt") == slurp(out_a / "report.txt"));

  // Progress output comes back when --quiet is dropped.
  const CliResult loud =
      run_cli(dir, "--out-dir '" + out_a.string() + "' simulate '" + cfg.string() + "'");
  CHECK(loud.code == 0);
  CHECK(loud.output.find("wrote") != std::string::npos);
}

TEST_CASE("cli check: passing suites exit 0 and name their checks") {
  TempDir dir("check");
  const CliResult ens = run_cli(dir, "--out-dir '" + dir.str() + "' check ensembles");
  CHECK(ens.code == 0);
  CHECK(ens.output.find("ensembles/involution") != std::string::npos);
  CHECK(ens.output.find("ensembles/conjugate-gradient-relations") != std::string::npos);
  CHECK(ens.output.find("[PASS]") != std::string::npos);
  CHECK(ens.output.find("[FAIL]") == std::string::npos);
  CHECK(slurp(dir.path / "check_ensembles.txt") == ens.output);

  const CliResult all = run_cli(dir, "--out-dir '" + dir.str() + "' check all");
  CHECK(all.code == 0);
  CHECK(all.output.find("geometry/") != std::string::npos);
  CHECK(all.output.find("potentials/") != std::string::npos);
  CHECK(all.output.find("dynamics/") != std::string::npos);
  CHECK(all.output.find("checks passed") != std::string::npos);
}

TEST_CASE("cli check: a failed invariant exits 1") {
  TempDir dir("checkfail");
  const CliResult res = run_cli(dir, "--out-dir '" + dir.str() + "' check selftest");
  CHECK(res.code == 1);
  CHECK(res.output.find("[FAIL]") != std::string::npos);
  CHECK(res.output.find("selftest-expected-fail") != std::string::npos);
  CHECK(res.output.find("1/2 checks passed") != std::string::npos);
  CHECK(slurp(dir.path / "check_selftest.txt").find("[FAIL]") != std::string::npos);
}

TEST_CASE("cli exit 2: configuration and usage errors") {
  TempDir dir("configerr");
  std::string broken = kIsochoricConfig;
  broken.replace(broken.find("\"steps\": 500"), 12, "\"steps\": 0");
  const fs::path cfg = write_file(dir.path, "broken.json", broken);

  CliResult res = run_cli(dir, "--out-dir '" + dir.str() + "' --quiet simulate '" +
                                   cfg.string() + "'");
  CHECK(res.code == 2);
  CHECK(res.output.find("config error [integrator.steps]") != std::string::npos);

  res = run_cli(dir, "--quiet simulate '" + (dir.path / "missing.json").string() + "'");
  CHECK(res.code == 2);
  CHECK(res.output.find("config error [config]") != std::string::npos);

  const fs::path unknown_key = write_file(dir.path, "unknown.json", R"json({
    "system": {"potential": "ideal_gas"},
    "hamiltonian": {"type": "isochoric"},
    "initial": {"q": [0.0, 1.0, 1.0]},
    "integrator": {"dt": 0.01, "steps": 5},
    "frobnicate": true
  })json");
  res = run_cli(dir, "--quiet simulate '" + unknown_key.string() + "'");
  CHECK(res.code == 2);
  CHECK(res.output.find("config error [frobnicate]") != std::string::npos);

  res = run_cli(dir, "check frobnicate");
  CHECK(res.code == 2);
  CHECK(res.output.find("config error [suite]") != std::string::npos);

  const fs::path empty_sweep = write_file(dir.path, "sweep.json", R"json({
    "base": {
      "system": {"potential": "ideal_gas"},
      "hamiltonian": {"type": "isochoric"},
      "initial": {"q": [0.0, 1.0, 1.0]},
      "integrator": {"dt": 0.01, "steps": 5}
    },
    "sweep": {"parameter": "hamiltonian.lambda", "values": []}
  })json");
  res = run_cli(dir, "--out-dir '" + dir.str() + "' --quiet sweep '" + empty_sweep.string() + "'");
  CHECK(res.code == 2);
  CHECK(res.output.find("config error [sweep.values]") != std::string::npos);

  CHECK(run_cli(dir, "frobnicate").code == 2);  // unknown subcommand
  CHECK(run_cli(dir, "simulate").code == 2);    // missing required argument
  CHECK(run_cli(dir, "").code == 2);            // a subcommand is required
}

TEST_CASE("cli exit 3: runtime failures after a valid configuration") {
  TempDir dir("runtimeerr");
  const fs::path blowup = write_file(dir.path, "blowup.json", R"json({
    "system": {"potential": "ideal_gas"},
    "hamiltonian": {"type": "general_process", "X": ["0", "-1", "0"]},
    "initial": {"q": [0.0, 1.0, 1.0]},
    "integrator": {"dt": 0.5, "steps": 4}
  })json");
  CliResult res = run_cli(dir, "--out-dir '" + dir.str() + "' --quiet simulate '" +
                                   blowup.string() + "'");
  CHECK(res.code == 3);
  CHECK(res.output.find("error:") != std::string::npos);
  CHECK(res.output.find("step") != std::string::npos);

  const fs::path singular = write_file(dir.path, "singular.json", R"json({
    "system": {"potential": "linear", "coeffs": [1.0, 1.0, 1.0]},
    "transform": {"preset": "helmholtz"},
    "points": [{"T": 0.5, "V": 1.0, "N": 1.0}]
  })json");
  res = run_cli(dir, "--out-dir '" + dir.str() + "' --quiet legendre '" + singular.string() + "'");
  CHECK(res.code == 3);
  CHECK(res.output.find("point 0") != std::string::npos);
}

TEST_CASE("cli simulate: the interacting map ramps pressure at exactly -a") {
  TempDir dir("interacting");
  const fs::path cfg = write_file(dir.path, "config.json", R"json({
    "system": {"potential": "ideal_gas"},
    "hamiltonian": {"type": "interacting", "a": 0.1, "b": 0.0},
    "initial": {"q": [0.0, 1.0, 1.0]},
    "integrator": {"dt": 0.01, "steps": 100}
  })json");
  const CliResult res =
      run_cli(dir, "--out-dir '" + dir.str() + "' --quiet simulate '" + cfg.string() + "'");
  CHECK(res.code == 0);

  const auto rows = load_csv(dir.path / "trajectory.csv");
  REQUIRE(rows.size() == 101);
  for (const auto& row : rows) {
    // Base point and temperature frozen; P(t) = P0 - a t with N0 = V0 = 1,
    // and the equation-of-state residual grows as -a t off the new manifold.
    CHECK(row[1] == rows[0][1]);
    CHECK(row[2] == rows[0][2]);
    CHECK(row[3] == rows[0][3]);
    CHECK(row[4] == rows[0][4]);
    CHECK(std::abs(row[5] - (2.0 / 3.0 - 0.1 * row[0])) < 1e-12);
    CHECK(std::abs(row[10] + 0.1 * row[0]) < 1e-12);
  }
}

TEST_CASE("cli legendre: tabulated transforms match the in-process potential") {
  TempDir dir("legendre");
  const fs::path helm = write_file(dir.path, "helmholtz.json", R"json({
    "system": {"potential": "ideal_gas"},
    "transform": {"preset": "helmholtz"},
    "points": [{"T": 0.6666666666666666, "V": 1.0, "N": 1.0}]
  })json");
  CliResult res =
      run_cli(dir, "--out-dir '" + dir.str() + "' --quiet legendre '" + helm.string() + "'");
  CHECK(res.code == 0);
  std::string header;
  auto rows = load_csv(dir.path / "legendre.csv", &header);
  CHECK(header == "T,V,N,S,Psi,regularity");
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0][3]) < 1e-10);                      // S at (T=2/3, V=1, N=1)
  CHECK(rows[0][4] == doctest::Approx(1.0).epsilon(1e-10)); // F = E - TS

  // A doubly transformed grid, checked against the library evaluating the
  // same potential on the (T, p_V, N) chart.
  const fs::path gibbs = write_file(dir.path, "gibbs.json", R"json({
    "system": {"potential": "ideal_gas"},
    "transform": {"preset": "gibbs"},
    "grid": {"T": {"from": 0.6, "to": 0.8, "count": 2},
             "P": {"from": 0.5, "to": 0.7, "count": 2},
             "N": 1.0},
    "guess": {"S": 0.0, "V": 1.0},
    "outputs": {"csv": "gibbs.csv"}
  })json");
  res = run_cli(dir, "--out-dir '" + dir.str() + "' --quiet legendre '" + gibbs.string() + "'");
  CHECK(res.code == 0);
  rows = load_csv(dir.path / "gibbs.csv", &header);
  CHECK(header == "T,P,N,S,V,Psi,regularity");
  REQUIRE(rows.size() == 4);

  const auto gas = std::make_shared<st::IdealGasPotential>();
  st::Vec guess(2);
  guess << 0.0, 1.0;
  const st::TransformedPotential gibbs_pot(gas, st::hydrostatic_preset("gibbs"), guess);
  for (const auto& row : rows) {
    st::Vec y(3);
    y << row[0], -row[1], row[2];  // display P enters as the momentum -P
    CHECK(row[5] == doctest::Approx(gibbs_pot.value(y)).epsilon(1e-9));
    // The recovered (S, V) must reproduce the requested intensives.
    st::Vec q(3);
    q << row[3], row[4], row[2];
    const st::Vec g = gas->gradient(q);
    CHECK(g[0] == doctest::Approx(row[0]).epsilon(1e-9));
    CHECK(-g[1] == doctest::Approx(row[1]).epsilon(1e-9));
  }
}

TEST_CASE("cli sweep: summary rows track the swept coupling") {
  TempDir dir("sweep");
  const fs::path cfg = write_file(dir.path, "sweep.json", R"json({
    "base": {
      "system": {"potential": "ideal_gas"},
      "hamiltonian": {"type": "interacting", "a": 0.05, "b": 0.0},
      "initial": {"q": [0.0, 1.0, 1.0]},
      "integrator": {"dt": 0.01, "steps": 100}
    },
    "sweep": {"parameter": "hamiltonian.a", "values": [0.05, 0.1, 0.2]}
  })json");
  const CliResult res =
      run_cli(dir, "--out-dir '" + dir.str() + "' --quiet sweep '" + cfg.string() + "'");
  CHECK(res.code == 0);

  std::string header;
  const auto rows = load_csv(dir.path / "sweep" / "summary.csv", &header);
  CHECK(header ==
        "index,value,ok,t_final,S,V,N,T,P,mu,E,hamiltonian_drift,onshell,eos,euler,"
        "closed_form_dev");
  REQUIRE(rows.size() == 3);
  const double a_values[] = {0.05, 0.1, 0.2};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i][2] == 1.0);
    CHECK(std::abs(rows[i][8] - (2.0 / 3.0 - a_values[i])) < 1e-12);
  }
}

TEST_CASE("cli creates nested out-dirs and honors artifact names") {
  TempDir dir("outdir");
  const fs::path cfg = write_file(dir.path, "config.json", kIsochoricConfig);
  const fs::path nested = dir.path / "deep" / "er" / "still";
  const CliResult res =
      run_cli(dir, "--out-dir '" + nested.string() + "' --quiet simulate '" + cfg.string() + "'");
  CHECK(res.code == 0);
  CHECK(fs::exists(nested / "trajectory.csv"));
  CHECK(fs::exists(nested / "report.txt"));
}

TEST_CASE("cli --help exits zero and lists the subcommands") {
  TempDir dir("help");
  const CliResult res = run_cli(dir, "--help");
  CHECK(res.code == 0);
  CHECK(res.output.find("simulate") != std::string::npos);
  CHECK(res.output.find("legendre") != std::string::npos);
  CHECK(res.output.find("sweep") != std::string::npos);
  CHECK(res.output.find("check") != std::string::npos);
}
