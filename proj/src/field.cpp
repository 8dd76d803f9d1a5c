#include "thermogas/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace thermogas {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

RealField::RealField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

RealField::RealField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("real field has " + std::to_string(values_.size()) +
                                " values, grid expects " + std::to_string(grid_.size()));
  }
}

RealField RealField::from_function(const Grid& grid,
                                   const std::function<double(const std::array<double, 3>&)>& f) {
  RealField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim(); ++a) x[a] = grid.coordinate(idx[a]);
    out.values_[i] = f(x);
  }
  return out;
}

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double RealField::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values_) m = std::min(m, v);
  return m;
}

double RealField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return values_.empty() ? 0.0 : s / static_cast<double>(values_.size());
}

bool RealField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

RealField& RealField::operator+=(const RealField& other) {
  require_same_grid(grid_, other.grid_, "RealField +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  require_same_grid(grid_, other.grid_, "RealField -=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

RealField& RealField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

RealField operator+(RealField lhs, const RealField& rhs) { return lhs += rhs; }
RealField operator-(RealField lhs, const RealField& rhs) { return lhs -= rhs; }
RealField operator*(double s, RealField f) { return f *= s; }

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != grid_.size()) {
    throw std::invalid_argument("spectral field has " + std::to_string(coeffs_.size()) +
                                " coefficients, grid expects " + std::to_string(grid_.size()));
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

}  // namespace thermogas
