#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "thermogas/grid.hpp"
#include "thermogas/initial.hpp"
#include "thermogas/spectral.hpp"
#include "thermogas/state.hpp"
#include "thermogas/thermo.hpp"

using namespace thermogas;
using testing::kTwoPi;

namespace {

PrimitiveState random_positive(const Grid& g, std::uint64_t seed, int band, double amp) {
  auto draw = [&](std::uint64_t stream) {
    RealField f = random_band_field(g, seed, stream, band);
    f *= amp / f.max_abs();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += 1.0;
    return f;
  };
  return {draw(0), draw(1)};
}

}  // namespace

TEST_SUITE("thermo_model") {

TEST_CASE("state functions at equilibrium and at rho = e") {
  ModelParams p;
  p.kappa1 = 0.7;
  p.kappa2 = 2.3;
  const auto s = state_functions(1.0, 1.0, p);
  CHECK(s.psi == 0.0);
  CHECK(s.p == doctest::Approx(0.7));
  CHECK(s.e == doctest::Approx(2.3));

  ModelParams unit;
  unit.kappa1 = 1.0;
  unit.kappa2 = 1.0;
  CHECK(state_functions(std::numbers::e, 1.0, unit).psi == doctest::Approx(2.718281828).epsilon(1e-9));
  CHECK_THROWS_AS(state_functions(0.0, 1.0, unit), std::invalid_argument);
}

TEST_CASE("eta_theta against a centered difference of eta") {
  ModelParams p;
  p.kappa1 = 1.0;
  p.kappa2 = 3.0;
  const double h = 1e-4;
  const auto s = state_functions(2.0, 4.0, p);
  const double fd = (state_functions(2.0, 4.0 + h, p).eta - state_functions(2.0, 4.0 - h, p).eta) / (2.0 * h);
  CHECK(s.eta_theta == doctest::Approx(1.5));
  CHECK(std::abs(fd - 1.5) / 1.5 <= 1e-8);
}

TEST_CASE("Darcy velocity and production") {
  const Grid g = make_grid(2, 32, kTwoPi);
  const auto params = testing::gas_params();

  SUBCASE("constant state has no flow") {
    const auto d = darcy_and_production({RealField(g, 1.0), RealField(g, 1.0)}, params);
    for (const auto& u : d.velocity) CHECK(u.max_abs() < 1e-15);
    CHECK(d.production.max_abs() < 1e-15);
    for (const auto& w : d.work_flux) CHECK(w.max_abs() < 1e-15);
  }
  SUBCASE("velocity for a temperature ripple") {
    ModelParams p = params;
    p.kappa1 = 1.0;
    const auto theta = RealField::from_function(g, [](const auto& x) { return 1.0 + 0.1 * std::cos(x[0]); });
    const auto d = darcy_and_production({RealField(g, 1.0), theta}, p);
    // -grad(rho theta)/rho with rho = 1 is 0.1 sin(x1) e1.
    const auto expected = RealField::from_function(g, [](const auto& x) { return 0.1 * std::sin(x[0]); });
    CHECK(testing::max_diff(d.velocity[0], expected) < 1e-14);
    CHECK(d.velocity[1].max_abs() < 1e-14);
  }
  SUBCASE("production is non-negative with constant conductivity") {
    ModelParams p = params;
    p.kappa3_var = {};
    double worst = 1.0;
    for (int s = 0; s < 20; ++s) {
      worst = std::min(worst, darcy_and_production(random_positive(g, 300 + s, 6, 0.8), p).production.min());
    }
    CHECK(worst >= -1e-14);
  }
  SUBCASE("negative conductivity is reported with its location") {
    ModelParams p = params;
    p.kappa3_bar = 0.1;
    p.kappa3_var.alpha = 0.5;
    const auto theta = RealField::from_function(g, [](const auto& x) { return 1.0 - 0.9 * std::cos(x[0]); });
    CHECK_THROWS_AS(darcy_and_production({RealField(g, 1.0), theta}, p), InvariantViolation);
  }
}

TEST_CASE("primitive tendencies") {
  const Grid g = make_grid(2, 32, kTwoPi);
  ModelParams p = testing::gas_params();

  const auto eq = rhs_primitive({RealField(g, 1.0), RealField(g, 1.0)}, p);
  CHECK(eq.first.max_abs() < 1e-15);
  CHECK(eq.second.max_abs() < 1e-15);
  const auto eq_tilde = rhs_tilde({RealField(g), RealField(g)}, p);
  CHECK(eq_tilde.first.max_abs() < 1e-15);
  CHECK(eq_tilde.second.max_abs() < 1e-15);

  ModelParams c = p;
  c.kappa3_var = {};
  c.kappa1 = 1.3;
  const auto rho = RealField::from_function(g, [](const auto& x) { return 1.0 + 0.01 * std::cos(x[0]); });
  const auto t = rhs_primitive({rho, RealField(g, 1.0)}, c);
  const auto expected = RealField::from_function(g, [](const auto& x) { return -0.013 * std::cos(x[0]); });
  CHECK(testing::max_diff(t.first, expected) < 1e-14);

  for (int s = 0; s < 10; ++s) CHECK(std::abs(rhs_primitive(random_positive(g, 40 + s, 8, 0.5), p).first.mean()) < 1e-14);
}

TEST_CASE("a-form variables") {
  const Grid g = make_grid(1, 16, kTwoPi);
  const auto p = testing::gas_params();
  CHECK(to_a_form({RealField(g, 1.0), RealField(g, 1.0)}, p).a.max_abs() == 0.0);
  CHECK(to_a_form({RealField(g, 2.0), RealField(g, 1.0)}, p).a[3] == -0.5);

  const auto prim = random_positive(make_grid(2, 32, 1.0), 8, 10, 0.6);
  const auto back = std::get<PrimitiveState>(change_variables(change_variables(prim, Formulation::a_form, p),
                                                              Formulation::primitive, p));
  CHECK(testing::max_diff(back.rho, prim.rho) <= 1e-14);
  CHECK(testing::max_diff(back.theta, prim.theta) <= 1e-14);
  CHECK_THROWS_AS(check_floor(RealField(g, -0.95), 0.1), InvariantViolation);
}

TEST_CASE("F and G vanish without gradients") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto p = testing::gas_params();
  const auto zero = nonlinear_fg(RealField(g), RealField(g), p);
  CHECK(zero.F.max_abs() == 0.0);
  CHECK(zero.G.max_abs() == 0.0);
  const auto constant = nonlinear_fg(RealField(g, 0.3), RealField(g), p);
  CHECK(constant.F.max_abs() < 1e-15);
  CHECK(constant.G.max_abs() < 1e-15);
  CHECK_THROWS_AS(nonlinear_fg(RealField(g, -0.95), RealField(g), p), InvariantViolation);
}

TEST_CASE("a-form and tilde tendencies agree with the primitive form") {
  const Grid g = make_grid(2, 64, kTwoPi);
  const auto p = testing::gas_params();
  for (int s = 0; s < 5; ++s) {
    const AState a = random_band_state(g, 70 + s, 3, 1e-2, Normalization::linf, DataVariables::a_form, p);
    const auto prim = std::get<PrimitiveState>(change_variables(a, Formulation::primitive, p));
    const auto rp = rhs_primitive(prim, p);
    const auto ra = rhs_a_form(a, p);
    RealField a_t(g);
    for (std::size_t i = 0; i < g.size(); ++i) a_t[i] = -rp.first[i] / (prim.rho[i] * prim.rho[i]);
    CHECK(testing::rel_l2(ra.first, a_t) <= 1e-6);
    CHECK(testing::rel_l2(ra.second, rp.second) <= 1e-6);

    const auto rt = rhs_tilde(to_tilde(prim, p), p);
    CHECK(testing::rel_l2(rt.first, rp.first) <= 1e-6);
    CHECK(testing::rel_l2(rt.second, rp.second) <= 1e-6);
  }
}

TEST_CASE("expanded differences of F and G") {
  const Grid g = make_grid(2, 32, kTwoPi);
  const auto p = testing::gas_params();
  auto draw = [&](std::uint64_t stream) {
    RealField f = random_band_field(g, 17, stream, 6);
    f *= 0.2 / f.max_abs();
    return f;
  };

  const RealField b = draw(0), tau = draw(1);
  const auto same = difference_fg(b, tau, b, tau, p);
  CHECK(same.dF.max_abs() == 0.0);
  CHECK(same.dG.max_abs() == 0.0);
  for (const auto& j : same.J) CHECK(j.max_abs() == 0.0);

  for (int s = 0; s < 10; ++s) {
    const auto d = difference_fg(draw(4 * s + 2), draw(4 * s + 3), draw(4 * s + 4), draw(4 * s + 5), p);
    CHECK((d.dF - d.direct_dF).max_abs() <= 1e-10 * d.direct_dF.max_abs());
    CHECK((d.dG - d.direct_dG).max_abs() <= 1e-9 * d.direct_dG.max_abs());
  }
}

}
