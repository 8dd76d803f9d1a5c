#include "doctest.h"
#include "test_support.hpp"
#include "thermogas/fixed_point.hpp"
#include "thermogas/grid.hpp"
#include "thermogas/initial.hpp"
#include "thermogas/spectral.hpp"

using namespace thermogas;
using testing::kTwoPi;

namespace {

Forcing constant_forcing(const RealField& F, const RealField& G, int steps) {
  Forcing f;
  f.F.assign(steps, F);
  f.G.assign(steps, G);
  return f;
}

using LMat = std::array<long double, 4>;

LMat lmul(const LMat& a, const LMat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

// e^X by scaling, a long-double Taylor series and squaring.
LMat expm(const Mat2& X) {
  int sq = 0;
  long double s = 1.0L;
  while (std::max({std::fabs(X[0]), std::fabs(X[1]), std::fabs(X[2]), std::fabs(X[3])}) * s > 0.1L) {
    s /= 2.0L;
    ++sq;
  }
  const LMat Y{X[0] * s, X[1] * s, X[2] * s, X[3] * s};
  LMat sum{1, 0, 0, 1}, term{1, 0, 0, 1};
  for (int n = 1; n < 30; ++n) {
    term = lmul(term, Y);
    for (auto& v : term) v /= n;
    for (int i = 0; i < 4; ++i) sum[i] += term[i];
  }
  for (int i = 0; i < sq; ++i) sum = lmul(sum, sum);
  return sum;
}

}  // namespace

TEST_SUITE("fixedpoint_solver") {

TEST_CASE("linear solve with zero data and zero forcing") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto traj = solve_linearized(RealField(g), RealField(g), constant_forcing(RealField(g), RealField(g), 10),
                                     testing::gas_params(), 0.1, 0.01);
  CHECK(traj.states.size() == 11);
  for (const auto& s : traj.states) CHECK(s.a.max_abs() + s.theta.max_abs() == 0.0);
  CHECK(e_norm(traj) == 0.0);
  CHECK_THROWS_AS(solve_linearized(RealField(g), RealField(g), constant_forcing(RealField(g), RealField(g), 3),
                                   testing::gas_params(), 0.1, 0.01),
                  std::invalid_argument);
}

TEST_CASE("single mode evolves by the matrix exponential") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto p = testing::gas_params();
  const double T = 0.5, eps = 0.01;
  const RealField mode = single_mode_field(g, {1, 1, 0}, 1.0);
  const auto traj =
      solve_linearized(eps * mode, RealField(g), constant_forcing(RealField(g), RealField(g), 50), p, T, 0.01);
  const Mat2 A = linear_symbol(p, LinearForm::a_form);
  const double q = 2.0;
  const LMat E = expm({q * T * A[0], q * T * A[1], q * T * A[2], q * T * A[3]});
  CHECK(testing::max_diff(traj.states.back().a, static_cast<double>(E[0] * eps) * mode) <= 1e-12 * eps);
  CHECK(testing::max_diff(traj.states.back().theta, static_cast<double>(E[2] * eps) * mode) <= 1e-12 * eps);
}

TEST_CASE("constant forcing matches the closed-form Duhamel integral") {
  const Grid g = make_grid(1, 16, kTwoPi);
  const auto p = testing::gas_params();
  const double T = 0.6, f0 = 0.02, g0 = -0.03;
  const RealField mode = single_mode_field(g, {2, 0, 0}, 1.0);
  const auto traj = solve_linearized(RealField(g), RealField(g), constant_forcing(f0 * mode, g0 * mode, 30), p, T, 0.02);

  // M^{-1} (e^{MT} - I) N with N = (f0, g0 / kappa2).
  const Mat2 A = linear_symbol(p, LinearForm::a_form);
  const double q = 4.0;
  const Mat2 M{q * A[0], q * A[1], q * A[2], q * A[3]};
  const LMat E = expm({M[0] * T, M[1] * T, M[2] * T, M[3] * T});
  const long double n1 = f0, n2 = g0 / p.kappa2;
  const long double r1 = (E[0] - 1) * n1 + E[1] * n2;
  const long double r2 = E[2] * n1 + (E[3] - 1) * n2;
  const long double det = static_cast<long double>(M[0]) * M[3] - static_cast<long double>(M[1]) * M[2];
  const double a_ref = static_cast<double>((M[3] * r1 - M[1] * r2) / det);
  const double t_ref = static_cast<double>((-M[2] * r1 + M[0] * r2) / det);
  CHECK(testing::max_diff(traj.states.back().a, a_ref * mode) <= 1e-10);
  CHECK(testing::max_diff(traj.states.back().theta, t_ref * mode) <= 1e-10);
}

TEST_CASE("phi map") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto p = testing::gas_params();
  const double T = 0.1, dt = 0.01;
  const auto zero_forcing = constant_forcing(RealField(g), RealField(g), 10);
  const auto zero = solve_linearized(RealField(g), RealField(g), zero_forcing, p, T, dt);

  const auto out = phi_map(zero, RealField(g), RealField(g), p, T, dt);
  for (const auto& s : out.states) CHECK(s.a.max_abs() + s.theta.max_abs() == 0.0);

  const AState data = random_band_state(g, 3, 4, 0.05, Normalization::linf, DataVariables::a_form, p);
  const auto free = solve_linearized(data.a, data.theta, zero_forcing, p, T, dt);
  const auto mapped = phi_map(zero, data.a, data.theta, p, T, dt);
  CHECK(e_distance(mapped, free) == 0.0);
  CHECK(linf_l2_distance(mapped, free) == 0.0);
}

TEST_CASE("smallness report") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto zero = check_smallness(RealField(g), RealField(g), 1e-6, 1.0);
  CHECK(zero.data_norm == 0.0);
  CHECK(zero.data_small);

  const auto p = testing::gas_params();
  const AState data = random_band_state(g, 5, 3, 0.4, Normalization::besov, DataVariables::a_form, p);
  const auto r = check_smallness(data.a, data.theta, 0.2, 1.0);
  CHECK(r.data_norm == doctest::Approx(0.4));
  CHECK(r.bound == doctest::Approx(0.1));
  CHECK_FALSE(r.data_small);
  CHECK_FALSE(r.solution_norm.has_value());
}

TEST_CASE("Picard iteration") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto p = testing::gas_params();
  PicardOptions opt;
  opt.T = 0.2;
  opt.dt = 0.005;
  opt.tol = 1e-14;

  SUBCASE("zero data converges at once") {
    const auto r = picard_iterate(RealField(g), RealField(g), p, opt);
    CHECK(r.report.converged);
    CHECK(r.report.differences.size() == 1);
    CHECK(r.report.differences[0] == 0.0);
  }
  SUBCASE("small data contracts to the direct solution") {
    const AState data = random_band_state(g, 8, 3, 1e-3, Normalization::besov, DataVariables::a_form, p);
    const auto r = picard_iterate(data.a, data.theta, p, opt);
    const auto& rep = r.report;
    CHECK(rep.status == PicardStatus::converged);
    REQUIRE(rep.contraction_ratios.size() >= 1);
    for (double x : rep.contraction_ratios) CHECK(x < 1.0);
    CHECK(rep.direct_l2_distance <= 1e-6);
    CHECK(rep.smallness.data_small);
    CHECK(rep.smallness.contained.value());

    const auto again = phi_map(r.solution, data.a, data.theta, p, opt.T, opt.dt);
    CHECK(std::abs(e_norm(again) - e_norm(r.solution)) <= 10 * opt.tol);
  }
  SUBCASE("large data is flagged") {
    const AState data = random_band_state(g, 8, 3, 10.0, Normalization::besov, DataVariables::a_form, p);
    opt.max_iter = 5;
    opt.cross_validate = false;
    const auto r = picard_iterate(data.a, data.theta, p, opt);
    CHECK_FALSE(r.report.smallness.data_small);
    CHECK(to_string(r.report.status).size() > 0);
  }
  SUBCASE("bad options") {
    opt.tol = 0.0;
    CHECK_THROWS_AS(picard_iterate(RealField(g), RealField(g), p, opt), std::invalid_argument);
  }
}

}
