#include "thermogas/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermogas/spectral.hpp"

namespace thermogas {

namespace {

void require_finite(const RealField& f) {
  if (!f.all_finite()) throw std::invalid_argument("norm of a field with non-finite values");
}

void require_valid_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("L^p norm needs p >= 1");
}

double lp_of_magnitudes(const Grid& grid, std::span<const double> mags, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : mags) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (double v : mags) acc += v * v;
    return std::sqrt(acc * grid.cell_volume());
  }
  for (double v : mags) acc += std::pow(v, p);
  return std::pow(acc * grid.cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const RealField& f, double p) {
  require_valid_p(p);
  require_finite(f);
  std::vector<double> mags(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f[i]);
  return lp_of_magnitudes(f.grid(), mags, p);
}

double lp_norm(const std::vector<RealField>& v, double p) {
  require_valid_p(p);
  if (v.empty()) throw std::invalid_argument("L^p norm of an empty vector field");
  const Grid& grid = v.front().grid();
  std::vector<double> mags(grid.size(), 0.0);
  for (const auto& c : v) {
    require_same_grid(grid, c.grid(), "lp_norm");
    require_finite(c);
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] += c[i] * c[i];
  }
  for (double& m : mags) m = std::sqrt(m);
  return lp_of_magnitudes(grid, mags, p);
}

double hdot_norm(const SpectralField& g, double s) {
  const Grid& grid = g.grid();
  double acc = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    // flat index 0 is the k = 0 mode; every other index has |k| > 0
    const double k2 = grid.k_squared(i);
    acc += std::pow(k2, s) * std::norm(g[i]);
  }
  return std::sqrt(acc * grid.volume());
}

double hdot_norm(const RealField& f, double s) {
  require_finite(f);
  return hdot_norm(forward(f), s);
}

double l2_norm(const SpectralField& g) {
  double acc = 0.0;
  for (const auto& c : g.coefficients()) acc += std::norm(c);
  return std::sqrt(acc * g.grid().volume());
}

double h_norm(const SpectralField& g, double s) {
  const double l2 = l2_norm(g);
  const double hd = hdot_norm(g, s);
  return std::sqrt(l2 * l2 + hd * hd);
}

double h_norm(const RealField& f, double s) {
  require_finite(f);
  return h_norm(forward(f), s);
}

double field_norm(const RealField& f, const NormSpec& spec) {
  switch (spec.kind) {
    case NormSpec::Kind::lp:
      return lp_norm(f, spec.order);
    case NormSpec::Kind::sobolev:
      return h_norm(f, spec.order);
    case NormSpec::Kind::homogeneous_sobolev:
      return hdot_norm(f, spec.order);
  }
  throw std::invalid_argument("unknown norm kind");
}

}  // namespace thermogas
