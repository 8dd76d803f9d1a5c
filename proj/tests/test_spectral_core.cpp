#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "test_support.hpp"
#include "thermogas/grid.hpp"
#include "thermogas/initial.hpp"
#include "thermogas/norms.hpp"
#include "thermogas/snapshot.hpp"
#include "thermogas/spectral.hpp"

using namespace thermogas;
using testing::kTwoPi;

TEST_SUITE("spectral_core") {

TEST_CASE("lattice of a one-dimensional 2pi box is the integers") {
  const Grid g = make_grid(1, 8, kTwoPi);
  CHECK(g.size() == 8);
  CHECK(g.wavenumber_unit() == doctest::Approx(1.0));
  std::vector<int> modes;
  for (std::size_t i = 0; i < g.size(); ++i) modes.push_back(g.modes(i)[0]);
  std::sort(modes.begin(), modes.end());
  CHECK(modes == std::vector<int>{-4, -3, -2, -1, 0, 1, 2, 3});
}

TEST_CASE("three-dimensional lattice size and largest wavenumber") {
  const Grid g = make_grid(3, 32, kTwoPi);
  CHECK(g.size() == 32768);
  CHECK(g.max_wavenumber() == doctest::Approx(std::sqrt(3.0) * 16.0));
}

TEST_CASE("grid preconditions") {
  CHECK_THROWS_AS(make_grid(1, 12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 8, -1.0), std::invalid_argument);
}

TEST_CASE("transform of a constant and of cos x") {
  const Grid g = make_grid(1, 8, kTwoPi);
  const auto one = forward(RealField(g, 1.0));
  CHECK(one[0].real() == doctest::Approx(1.0));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(one[i]) < 1e-15);

  const auto c = forward(RealField::from_function(g, [](const auto& x) { return std::cos(x[0]); }));
  CHECK(c[1].real() == doctest::Approx(0.5));
  CHECK(c[7].real() == doctest::Approx(0.5));
  CHECK(std::abs(c[0]) < 1e-15);
  CHECK(std::abs(c[2]) < 1e-15);
}

TEST_CASE("round trip of a random field") {
  for (int d = 1; d <= 3; ++d) {
    const Grid g = make_grid(d, d == 3 ? 16 : 32, 3.0);
    RealField f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = uniform_signed(11, i);
    CHECK(testing::max_diff(inverse(forward(f)), f) <= 1e-12 * f.max_abs());
  }
}

TEST_CASE("derivatives of single modes") {
  const Grid g = make_grid(2, 16, kTwoPi);
  const auto cosx = RealField::from_function(g, [](const auto& x) { return std::cos(x[0]); });
  CHECK(testing::max_diff(laplacian(cosx), -1.0 * cosx) < 1e-13);

  const auto sin2x = RealField::from_function(g, [](const auto& x) { return std::sin(2.0 * x[0]); });
  const auto grad = gradient(sin2x);
  REQUIRE(grad.size() == 2);
  const auto expected = RealField::from_function(g, [](const auto& x) { return 2.0 * std::cos(2.0 * x[0]); });
  CHECK(testing::max_diff(grad[0], expected) < 1e-13);
  CHECK(grad[1].max_abs() < 1e-13);
}

TEST_CASE("laplacian against centered finite differences of the analytic field") {
  const Grid g = make_grid(2, 64, kTwoPi);
  // Modes with |m_j| <= 4 and random coefficients, known in closed form.
  struct Term {
    int m1, m2;
    double c, s;
  };
  std::vector<Term> terms;
  std::uint64_t k = 0;
  for (int m1 = 0; m1 <= 4; ++m1)
    for (int m2 = -4; m2 <= 4; ++m2) {
      if (m1 == 0 && m2 <= 0) continue;
      terms.push_back({m1, m2, uniform_signed(3, k++), uniform_signed(3, k++)});
    }
  auto f = [&](double x, double y) {
    double v = 0.0;
    for (const auto& t : terms) v += t.c * std::cos(t.m1 * x + t.m2 * y) + t.s * std::sin(t.m1 * x + t.m2 * y);
    return v;
  };
  const double h = 1e-3;
  const auto field = RealField::from_function(g, [&](const auto& x) { return f(x[0], x[1]); });
  const auto fd = RealField::from_function(g, [&](const auto& x) {
    return (f(x[0] + h, x[1]) + f(x[0] - h, x[1]) + f(x[0], x[1] + h) + f(x[0], x[1] - h) - 4.0 * f(x[0], x[1])) /
           (h * h);
  });
  CHECK(testing::rel_l2(laplacian(field), fd) <= 1e-4);
}

TEST_CASE("two-thirds dealiasing") {
  const Grid g = make_grid(1, 32, kTwoPi);
  const auto low = RealField::from_function(g, [](const auto& x) { return std::cos(10.0 * x[0]) + std::sin(3.0 * x[0]); });
  CHECK(testing::max_diff(dealias(low), low) < 1e-14);
  const auto high = RealField::from_function(g, [](const auto& x) { return std::cos(15.0 * x[0]); });
  CHECK(dealias(high).max_abs() < 1e-14);

  const Grid g2 = make_grid(2, 16, 2.0);
  SpectralField r(g2);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = {uniform_signed(5, 2 * i), uniform_signed(5, 2 * i + 1)};
  const auto once = dealias(r);
  const auto twice = dealias(once);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(twice[i] == once[i]);
}

TEST_CASE("norm values") {
  const Grid g = make_grid(1, 32, kTwoPi);
  CHECK(lp_norm(RealField(g, 1.0), 2.0) == doctest::Approx(std::sqrt(kTwoPi)));
  const auto c = RealField::from_function(g, [](const auto& x) { return std::cos(x[0]); });
  CHECK(hdot_norm(c, 1.0) == doctest::Approx(std::sqrt(std::numbers::pi)));
  CHECK(lp_norm(c, 2.0) == doctest::Approx(std::sqrt(std::numbers::pi)));
  const RealField zero(g);
  for (const auto& spec : {NormSpec::lp(2.0), NormSpec::lp(kInfinity), NormSpec::lp(1.0), NormSpec::h(2.0),
                           NormSpec::hdot(1.5)}) {
    CHECK(field_norm(zero, spec) == 0.0);
  }
  CHECK_THROWS_AS(field_norm(c, NormSpec::lp(0.5)), std::invalid_argument);
}

TEST_CASE("snapshot files") {
  const auto dir = std::filesystem::temp_directory_path() / "thermogas_snapshot_test";
  std::filesystem::create_directories(dir);
  const Grid g = make_grid(2, 16, 3.5);
  RealField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = uniform_signed(99, i) * 1e3;

  SUBCASE("round trip is bit exact") {
    save_snapshot(f, 0.125, dir / "f.thg");
    const auto s = load_snapshot(dir / "f.thg");
    CHECK(s.time == 0.125);
    CHECK(s.field.grid() == g);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(s.field[i] == f[i]);
  }
  SUBCASE("truncated file") {
    save_snapshot(f, 0.0, dir / "t.thg");
    std::filesystem::resize_file(dir / "t.thg", std::filesystem::file_size(dir / "t.thg") - 8);
    try {
      load_snapshot(dir / "t.thg");
      FAIL("expected a format error");
    } catch (const SnapshotFormatError& e) {
      CHECK(std::string(e.what()).find("size mismatch") != std::string::npos);
    }
  }
  SUBCASE("wrong magic") {
    std::ofstream(dir / "m.thg", std::ios::binary) << "NOTASNAPxxxxxxxxxxxxxxxxxxxxxxxxxx";
    try {
      load_snapshot(dir / "m.thg");
      FAIL("expected a format error");
    } catch (const SnapshotFormatError& e) {
      CHECK(std::string(e.what()).find("THGSNAP1") != std::string::npos);
    }
  }
  std::filesystem::remove_all(dir);
}

}
