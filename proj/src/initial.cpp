#include "thermogas/initial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermogas/littlewood_paley.hpp"
#include "thermogas/norms.hpp"
#include "thermogas/spectral.hpp"

namespace thermogas {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform_signed(std::uint64_t seed, std::uint64_t counter) {
  const double u = static_cast<double>(splitmix64(seed, counter) >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

namespace {

// True for the member of {m, -m} whose first nonzero component is positive.
bool is_representative(const std::array<int, 3>& m, int dim) {
  for (int a = 0; a < dim; ++a) {
    if (m[a] != 0) return m[a] > 0;
  }
  return false;
}

}  // namespace

RealField random_band_field(const Grid& grid, std::uint64_t seed, std::uint64_t stream, int band) {
  if (band < 1 || 3 * band > grid.n()) throw std::invalid_argument("band must satisfy 1 <= band <= n/3");
  SpectralField hat(grid);
  const std::uint64_t base = stream * 2 * static_cast<std::uint64_t>(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto m = grid.modes(i);
    int linf = 0;
    for (int a = 0; a < grid.dim(); ++a) linf = std::max(linf, std::abs(m[a]));
    if (linf < 1 || linf > band || !is_representative(m, grid.dim())) continue;
    const Complex c(uniform_signed(seed, base + 2 * i), uniform_signed(seed, base + 2 * i + 1));
    std::array<int, 3> neg{};
    for (int a = 0; a < grid.dim(); ++a) neg[a] = grid.index_of_mode(-m[a]);
    hat[i] = c;
    hat[grid.flatten(neg)] = std::conj(c);
  }
  return inverse(hat);
}

RealField single_mode_field(const Grid& grid, const std::array<int, 3>& mode, double amplitude, bool sine) {
  const double unit = grid.wavenumber_unit();
  const int dim = grid.dim();
  return RealField::from_function(grid, [&](const std::array<double, 3>& x) {
    double phase = 0.0;
    for (int a = 0; a < dim; ++a) phase += unit * mode[a] * x[a];
    return amplitude * (sine ? std::sin(phase) : std::cos(phase));
  });
}

AState random_band_state(const Grid& grid, std::uint64_t seed, int band, double amplitude, Normalization norm,
                         DataVariables vars, const ModelParams& params) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be >= 0");
  RealField f = random_band_field(grid, seed, 0, band);
  RealField g = random_band_field(grid, seed, 1, band);

  double measured = 1.0;
  switch (norm) {
    case Normalization::none:
      break;
    case Normalization::linf:
      measured = std::max(f.max_abs(), g.max_abs());
      break;
    case Normalization::h2: {
      const double nf = h_norm(f, 2.0);
      const double ng = h_norm(g, 2.0);
      measured = std::sqrt(nf * nf + ng * ng);
      break;
    }
    case Normalization::besov: {
      const DyadicFamily family(grid);
      const BesovSpec crit{1.5, 2.0, 1.0};
      measured = besov_norm(family, f, crit) + besov_norm(family, g, crit);
      break;
    }
  }
  const double scale = measured > 0.0 ? amplitude / measured : 0.0;
  f *= scale;
  g *= scale;
  if (vars == DataVariables::a_form) return {std::move(f), std::move(g)};
  return to_a_form(to_primitive(TildeState{std::move(f), std::move(g)}, params), params);
}

}  // namespace thermogas
