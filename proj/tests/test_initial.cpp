#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "thermogas/initial.hpp"
#include "thermogas/spectral.hpp"

using namespace thermogas;
using testing::kTwoPi;

TEST_SUITE("initial_data") {

TEST_CASE("splitmix64 reference values") {
  // First outputs of the reference generator seeded with 0.
  CHECK(splitmix64(0, 0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(0, 1) == 0x6E789E6AA1B965F4ULL);
  CHECK(splitmix64(0, 2) == 0x06C45D188009454FULL);
  CHECK(splitmix64(1234, 7) == splitmix64(1234, 7));
}

TEST_CASE("uniform draws lie in [-1, 1)") {
  double lo = 1.0, hi = -1.0, sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_signed(42, i);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo >= -1.0);
  CHECK(hi < 1.0);
  CHECK(lo < -0.99);
  CHECK(hi > 0.99);
  CHECK(std::abs(sum / n) < 0.02);
}

TEST_CASE("random band field") {
  for (int d : {1, 2, 3}) {
    const Grid g = make_grid(d, 16, kTwoPi);
    const int band = 3;
    const RealField f = random_band_field(g, 99, 0, band);
    CHECK(f.all_finite());
    CHECK(std::abs(f.mean()) <= 1e-15);
    const auto hat = forward(f);
    int nonzero = 0;
    for (std::size_t i = 0; i < hat.size(); ++i) {
      const auto m = g.modes(i);
      int reach = 0;
      for (int a = 0; a < d; ++a) reach = std::max(reach, std::abs(m[a]));
      const bool inside = reach >= 1 && reach <= band;
      if (inside) {
        CHECK(std::abs(hat[i]) > 0.0);
        ++nonzero;
      } else {
        CHECK(std::abs(hat[i]) <= 1e-15);
      }
      // Hermitian symmetry of a real field.
      std::array<int, 3> neg{};
      for (int a = 0; a < d; ++a) neg[a] = g.index_of_mode(-m[a]);
      CHECK(std::abs(hat[g.flatten(neg)] - std::conj(hat[i])) <= 1e-15);
    }
    CHECK(nonzero == static_cast<int>(std::pow(2 * band + 1, d)) - 1);
  }
  const Grid g = make_grid(2, 16, kTwoPi);
  CHECK(testing::max_diff(random_band_field(g, 5, 0, 2), random_band_field(g, 5, 0, 2)) == 0.0);
  CHECK(testing::max_diff(random_band_field(g, 5, 0, 2), random_band_field(g, 5, 1, 2)) > 0.0);
  CHECK_THROWS_AS(random_band_field(g, 5, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_band_field(g, 5, 0, 6), std::invalid_argument);
}

TEST_CASE("single mode field") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const RealField c = single_mode_field(g, {1, -2, 0}, 0.5);
  const RealField s = single_mode_field(g, {1, -2, 0}, 0.5, true);
  const RealField cw = RealField::from_function(g, [](const auto& x) { return 0.5 * std::cos(x[0] - 2 * x[1]); });
  const RealField sw = RealField::from_function(g, [](const auto& x) { return 0.5 * std::sin(x[0] - 2 * x[1]); });
  CHECK(testing::max_diff(c, cw) <= 1e-15);
  CHECK(testing::max_diff(s, sw) <= 1e-15);
}

TEST_CASE("normalizations") {
  const Grid g = make_grid(2, 32, kTwoPi);
  const auto p = testing::gas_params();
  const AState linf = random_band_state(g, 3, 4, 0.1, Normalization::linf, DataVariables::a_form, p);
  CHECK(std::max(linf.a.max_abs(), linf.theta.max_abs()) == doctest::Approx(0.1).epsilon(1e-13));

  const AState h2 = random_band_state(g, 3, 4, 0.1, Normalization::h2, DataVariables::a_form, p);
  CHECK(std::hypot(h_norm(h2.a, 2.0), h_norm(h2.theta, 2.0)) == doctest::Approx(0.1).epsilon(1e-13));

  // Same draws, so the shapes agree up to one scale factor.
  const double k = h2.a[17] / linf.a[17];
  CHECK(testing::max_diff(h2.a, k * linf.a) <= 1e-15);

  const AState tilde = random_band_state(g, 3, 4, 0.1, Normalization::linf, DataVariables::tilde, p);
  const auto prim = to_primitive(tilde, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max({worst, std::abs(prim.rho[i] - 1.0), std::abs(prim.theta[i] - 1.0)});
  CHECK(worst == doctest::Approx(0.1).epsilon(1e-13));
}

}
