#include "thermogas/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thermogas {

Grid make_grid(int dim, int n, double length) {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("points per axis must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("box length must be positive and finite");
  }
  Grid g;
  g.dim_ = dim;
  g.n_ = n;
  g.length_ = length;
  g.size_ = 1;
  for (int a = 0; a < dim; ++a) g.size_ *= static_cast<std::size_t>(n);
  return g;
}

double Grid::wavenumber_unit() const { return 2.0 * std::numbers::pi / length_; }

double Grid::cell_volume() const { return std::pow(length_ / n_, dim_); }

double Grid::volume() const { return std::pow(length_, dim_); }

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) flat = flat * static_cast<std::size_t>(n_) + idx[a];
  return flat;
}

std::array<int, 3> Grid::modes(std::size_t flat) const {
  auto idx = unflatten(flat);
  std::array<int, 3> m{0, 0, 0};
  for (int a = 0; a < dim_; ++a) m[a] = mode_of_index(idx[a]);
  return m;
}

double Grid::k_squared(std::size_t flat) const {
  const auto m = modes(flat);
  const double unit = wavenumber_unit();
  double k2 = 0.0;
  for (int a = 0; a < dim_; ++a) {
    const double k = unit * m[a];
    k2 += k * k;
  }
  return k2;
}

double Grid::max_wavenumber() const {
  return std::sqrt(static_cast<double>(dim_)) * std::numbers::pi * n_ / length_;
}

}  // namespace thermogas
