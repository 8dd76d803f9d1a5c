#include "doctest.h"
#include "test_support.hpp"
#include "thermogas/diagnostics.hpp"
#include "thermogas/initial.hpp"

using namespace thermogas;
using testing::kTwoPi;

namespace {

Trajectory run(const AState& s, double T, double dt, int stride = 1) {
  SimulateOptions opt;
  opt.T = T;
  opt.dt = dt;
  opt.snapshot_stride = stride;
  opt.step.formulation = Formulation::tilde;
  return simulate(s, testing::gas_params(), opt);
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("mass and positivity minima") {
  const Grid g = make_grid(3, 8, kTwoPi);
  PrimitiveState s{RealField(g, 1.0), RealField(g, 2.0)};
  CHECK(total_mass(s) == doctest::Approx(std::pow(kTwoPi, 3)).epsilon(1e-14));
  s.rho[5] = 0.25;
  s.theta[7] = 0.5;
  const auto [r, t] = positivity_minima(s);
  CHECK(r == 0.25);
  CHECK(t == 0.5);
}

TEST_CASE("energy functional") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto p = testing::gas_params();

  const auto zero = run({RealField(g), RealField(g)}, 0.05, 0.01);
  for (double x : energy_functional_X(zero, p)) CHECK(x == 0.0);
  for (const auto& id : l2_energy_identity(zero, p)) {
    CHECK(id.residual1 == 0.0);
    CHECK(id.residual2 == 0.0);
  }

  const AState data = random_band_state(g, 11, 3, 0.02, Normalization::linf, DataVariables::tilde, p);
  const auto traj = run(data, 0.5, 0.005);
  const auto X = energy_functional_X(traj, p);
  REQUIRE(X.size() == traj.states.size());
  CHECK(X.front() > 0.0);
  for (std::size_t i = 1; i < X.size(); ++i) CHECK(X[i] >= X[i - 1]);

  const auto ids = l2_energy_identity(traj, p);
  for (std::size_t i = 1; i + 1 < ids.size(); ++i) {
    CHECK(std::abs(ids[i].residual1) <= 0.05 * std::abs(ids[i].lhs1) + 1e-12);
    CHECK(std::abs(ids[i].residual2) <= 0.05 * std::abs(ids[i].lhs2) + 1e-12);
  }

  const auto rep = energy_report(traj, p);
  CHECK(rep.times == traj.times);
  CHECK(rep.mass.front() == doctest::Approx(rep.mass.back()).epsilon(1e-13));
  CHECK(min_entropy_production(traj, p) >= 0.0);

  auto short_traj = traj;
  short_traj.states.resize(2);
  short_traj.times.resize(2);
  CHECK_THROWS_AS(energy_functional_X(short_traj, p), std::invalid_argument);
}

TEST_CASE("compression samples the dilated field") {
  const Grid g = make_grid(2, 32, kTwoPi);
  const RealField u = RealField::from_function(g, [](const auto& x) { return std::cos(x[0]) + std::sin(2 * x[1]); });
  const RealField want = RealField::from_function(g, [](const auto& x) { return std::cos(3 * x[0]) + std::sin(6 * x[1]); });
  CHECK(testing::max_diff(compress(u, 3), want) <= 1e-14);
}

TEST_CASE("critical norm ratio") {
  // A dyadic dilation moves every Littlewood-Paley block up one level, so the
  // ratio is 2^(s - d/2) exactly.
  for (int d : {1, 2, 3}) {
    const Grid g = make_grid(d, d == 3 ? 16 : 32, kTwoPi);
    const RealField u = single_mode_field(g, {1, d > 1 ? 1 : 0, 0}, 1.0);
    for (double s : {0.5, 1.0, 1.5}) {
      CHECK(critical_norm_ratio(u, 2, s) == doctest::Approx(std::pow(2.0, s - 0.5 * d)).epsilon(1e-12));
    }
  }
  const Grid g = make_grid(2, 16, kTwoPi);
  CHECK_THROWS_AS(critical_norm_ratio(RealField(g, 3.0), 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_norm_ratio(single_mode_field(g, {4, 0, 0}, 1.0), 2, 1.0), std::invalid_argument);
}

TEST_CASE("scaling test") {
  const Grid g = make_grid(2, 32, kTwoPi);
  const auto p = testing::gas_params();
  SUBCASE("zero data") {
    const auto r = scaling_test({RealField(g), RealField(g)}, p, 2, 0.1, 0.01);
    CHECK(r.discrepancy == 0.0);
    CHECK(r.reference_norm == 0.0);
  }
  SUBCASE("single mode") {
    AState s{single_mode_field(g, {1, 0, 0}, 0.05), single_mode_field(g, {0, 1, 0}, 0.05)};
    const auto r = scaling_test(s, p, 2, 0.1, 0.01);
    CHECK(r.reference_norm > 0.0);
    CHECK(r.discrepancy <= 1e-6);
  }
  SUBCASE("bad arguments") {
    AState s{single_mode_field(g, {1, 0, 0}, 0.05), RealField(g)};
    CHECK_THROWS_AS(scaling_test(s, p, 1, 0.1, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(scaling_test(s, p, 16, 0.1, 0.01), std::invalid_argument);
  }
}

}
