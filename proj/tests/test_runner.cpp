#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "thermogas/runner.hpp"

using namespace thermogas;
namespace fs = std::filesystem;

namespace {

const std::string kGrid = R"("grid": {"d": 2, "n": 16, "L": 6.283185307179586})";
const std::string kParams =
    R"("params": {"kappa1": 1.0, "kappa2": 1.5, "kappa3_bar": 0.8, "kappa3_profile": "tanh", "alpha": 0.2})";

std::string config(const std::string& extra = "") {
  return "{" + kGrid + ", " + kParams + (extra.empty() ? "" : ", " + extra) + "}";
}

// Key of the ConfigError raised for the text, or "" when it parses.
std::string error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("thermogas_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli_runner") {

TEST_CASE("valid config") {
  const RunConfig c = parse_config(config(
      R"("initial": {"preset": "random-band", "seed": 7, "band": 2, "amplitude": 0.01, "normalize": "besov"},
         "time": {"T": 1.0, "dt": 0.01, "snapshot_stride": 10},
         "besov": {"s": 1.5, "p": "inf", "r": 1},
         "scaling": {"lambda": 2}, "verify": {"seed": 5})"));
  CHECK(c.grid.n() == 16);
  CHECK(c.params.kappa3_var.alpha == 0.2);
  CHECK(c.params.eps_a == 0.1);
  REQUIRE(c.initial);
  CHECK(c.initial->seed.value() == 7);
  CHECK(c.initial->normalize == Normalization::besov);
  REQUIRE(c.time);
  CHECK(c.time->steps() == 100);
  CHECK(c.time->formulation == Formulation::tilde);
  CHECK(std::isinf(c.besov.spec.p));
  CHECK(c.verify_seed.value() == 5);
  CHECK(c.fixedpoint.tol == 1e-12);
}

TEST_CASE("dt defaults to a divisor of T") {
  const RunConfig c = parse_config(config(R"("time": {"T": 0.3})"));
  const double steps = c.time->T / c.time->dt;
  CHECK(std::abs(steps - std::round(steps)) <= 1e-9);
  CHECK(c.time->dt <= default_dt(c.grid, c.params));
}

TEST_CASE("config errors name the offending key") {
  CHECK(error_key(config(R"("extra": 1)")) == "extra");
  CHECK(error_key("{" + kGrid + "}") == "params");
  CHECK(error_key("{not json") == "config");
  CHECK(error_key(R"({"grid": {"d": 2, "n": 12, "L": 1}, )" + kParams + "}") == "grid.n");
  CHECK(error_key(R"({"grid": {"d": 4, "n": 16, "L": 1}, )" + kParams + "}") == "grid.d");
  CHECK(error_key(R"({"grid": {"d": 2, "n": 16, "L": 0}, )" + kParams + "}") == "grid.L");
  CHECK(error_key(R"({"grid": {"d": 2, "n": 16, "L": 1, "m": 3}, )" + kParams + "}") == "grid.m");
  CHECK(error_key(config(R"("time": {"T": 1.0, "dt": 0.3})")) == "time.dt");
  CHECK(error_key(config(R"("time": {"T": 1.0, "dt": 0.1, "snapshot_stride": 3})")) == "time.snapshot_stride");
  CHECK(error_key(config(R"("time": {"T": 1.0, "scheme": "rk4"})")) == "time.scheme");
  CHECK(error_key(config(R"("initial": {"preset": "random-band", "band": 6, "amplitude": 0.1})")) == "initial.band");
  CHECK(error_key(config(R"("initial": {"preset": "single-mode", "mode": [1], "amplitude": 0.1, "component": "a"})")) ==
        "initial.mode");
  CHECK(error_key(config(R"("initial": {"preset": "random-band", "band": 3, "amplitude": 0.1}, "scaling": {"lambda": 2})")) ==
        "scaling.lambda");

  const std::string negative =
      "{" + kGrid + R"(, "params": {"kappa1": -1, "kappa2": 1.5, "kappa3_bar": 0.8, "kappa3_profile": "zero"}})";
  CHECK(error_key(negative) == "params.kappa1");
  try {
    parse_config(negative);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("kappa1") != std::string::npos);
  }
  const std::string big_alpha =
      "{" + kGrid + R"(, "params": {"kappa1": 1, "kappa2": 1.5, "kappa3_bar": 0.8, "kappa3_profile": "tanh", "alpha": 0.9}})";
  CHECK(error_key(big_alpha) == "params.alpha");
  const std::string stray_alpha =
      "{" + kGrid + R"(, "params": {"kappa1": 1, "kappa2": 1.5, "kappa3_bar": 0.8, "kappa3_profile": "zero", "alpha": 0.1}})";
  CHECK(error_key(stray_alpha) == "params.alpha");
}

TEST_CASE("initial presets") {
  SUBCASE("single mode on theta") {
    const RunConfig c = parse_config(
        config(R"("initial": {"preset": "single-mode", "mode": [1, 2], "amplitude": 0.1, "component": "theta", "shape": "sin"})"));
    const AState s = build_initial(c);
    CHECK(s.a.max_abs() == 0.0);
    CHECK(testing::max_diff(s.theta, single_mode_field(c.grid, {1, 2, 0}, 0.1, true)) == 0.0);
  }
  SUBCASE("random band needs a seed") {
    const RunConfig c = parse_config(config(R"("initial": {"preset": "random-band", "band": 2, "amplitude": 0.1})"));
    CHECK_THROWS_AS(build_initial(c), ConfigError);
    const AState s = build_initial(c, 3);
    CHECK(std::max(s.a.max_abs(), s.theta.max_abs()) == doctest::Approx(0.1));
  }
  SUBCASE("floor violation") {
    const RunConfig c = parse_config(
        config(R"("initial": {"preset": "single-mode", "mode": [1, 0], "amplitude": 2.0, "component": "a"})"));
    CHECK_THROWS_AS(build_initial(c), ConfigError);
  }
  SUBCASE("missing snapshot file") {
    const RunConfig c =
        parse_config(config(R"("initial": {"preset": "file", "a_path": "nope_a.thg", "theta_path": "nope_t.thg"})"), "/nonexistent");
    try {
      build_initial(c);
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "initial.a_path");
    }
  }
}

TEST_CASE("commands and environment") {
  CHECK(parse_command("simulate") == Command::simulate);
  CHECK(parse_command("verify") == Command::verify);
  CHECK_THROWS_AS(parse_command("plot"), std::invalid_argument);

  ::unsetenv("THERMOGAS_THREADS");
  CHECK(threads_from_env() == 1);
  ::setenv("THERMOGAS_THREADS", "4", 1);
  CHECK(threads_from_env() == 4);
  ::setenv("THERMOGAS_THREADS", "four", 1);
  CHECK(threads_from_env() == 1);
  ::setenv("THERMOGAS_THREADS", "0", 1);
  CHECK(threads_from_env() == 1);
  ::unsetenv("THERMOGAS_THREADS");
}

TEST_CASE("simulate on the zero preset") {
  const fs::path dir = scratch("zero");
  std::ofstream(dir / "zero.json") << config(
      R"("initial": {"preset": "zero"}, "time": {"T": 0.1, "dt": 0.01, "snapshot_stride": 5})");
  std::ostringstream out, err;
  RunRequest req{Command::simulate, dir / "zero.json", dir / "out", std::nullopt, 1};
  REQUIRE(run(req, out, err) == kExitOk);
  CHECK(err.str().empty());

  const std::string traj = read(dir / "out" / "trajectory.csv");
  std::istringstream lines(traj);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "time,h2_a,h2_theta,besov_a,besov_theta,linf_a,linf_theta,mass,min_rho,min_theta");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 10);
    for (int i = 1; i <= 6; ++i) CHECK(v[i] == 0.0);
    CHECK(v[7] == doctest::Approx(testing::kTwoPi * testing::kTwoPi));
    CHECK(v[8] == 1.0);
    CHECK(v[9] == 1.0);
  }
  CHECK(rows == 3);
  CHECK(fs::exists(dir / "out" / "energy_report.csv"));
  CHECK(fs::exists(dir / "out" / "snapshots" / "a_000002.thg"));
  CHECK(read(dir / "out" / "summary.txt").find("breached=false") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("bad configs exit with the config code") {
  const fs::path dir = scratch("bad");
  std::ostringstream out, err;
  RunRequest req{Command::simulate, dir / "missing.json", dir / "out", std::nullopt, 1};
  CHECK(run(req, out, err) == kExitConfig);

  std::ofstream(dir / "bad.json") << "{" + kGrid +
                                         R"(, "params": {"kappa1": -1, "kappa2": 1.5, "kappa3_bar": 0.8, "kappa3_profile": "zero"}})";
  req.config = dir / "bad.json";
  std::ostringstream err2;
  CHECK(run(req, out, err2) == kExitConfig);
  CHECK(err2.str().find("kappa1") != std::string::npos);

  std::ofstream(dir / "notime.json") << config(R"("initial": {"preset": "zero"})");
  req.config = dir / "notime.json";
  CHECK(run(req, out, err) == kExitConfig);
  fs::remove_all(dir);
}

TEST_CASE("besov, scaling and fixedpoint subcommands") {
  const fs::path dir = scratch("subcommands");
  std::ofstream(dir / "c.json") << "{" + kGrid + ", " + kParams +
                                       R"(, "initial": {"preset": "single-mode", "mode": [1, 1], "amplitude": 0.01, "component": "both"},
      "time": {"T": 0.1, "dt": 0.01}, "scaling": {"lambda": 2}})";
  std::ostringstream out, err;
  RunRequest req{Command::besov, dir / "c.json", dir / "out", std::nullopt, 1};
  CHECK(run(req, out, err) == kExitOk);
  CHECK(read(dir / "out" / "besov_a.csv").rfind("j,weighted,cumulative\n", 0) == 0);
  CHECK(fs::exists(dir / "out" / "besov_theta.csv"));

  req.command = Command::scaling;
  CHECK(run(req, out, err) == kExitOk);
  const std::string scaling = read(dir / "out" / "scaling.csv");
  CHECK(scaling.rfind("lambda,T,dt,discrepancy,reference_norm,critical_norm_ratio\n2,", 0) == 0);

  req.command = Command::fixedpoint;
  CHECK(run(req, out, err) == kExitOk);
  const std::string summary = read(dir / "out" / "fixedpoint_summary.txt");
  CHECK(summary.find("status=converged") != std::string::npos);
  CHECK(read(dir / "out" / "fixedpoint.csv").rfind("iteration,e_norm,difference,ratio\n", 0) == 0);
  fs::remove_all(dir);
}

}
