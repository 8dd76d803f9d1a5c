#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "thermogas/grid.hpp"

namespace thermogas {

using Complex = std::complex<double>;

/// Real scalar field sampled on a periodic grid (row-major, axis 0 slowest).
class RealField {
 public:
  RealField() = default;
  explicit RealField(const Grid& grid, double fill = 0.0);
  RealField(const Grid& grid, std::vector<double> values);

  /// Samples f(x) at every grid point; x carries d coordinates (unused ones zero).
  static RealField from_function(const Grid& grid,
                                 const std::function<double(const std::array<double, 3>&)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double max_abs() const;
  double min() const;
  double mean() const;
  bool all_finite() const;

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double s);

 private:
  Grid grid_;
  std::vector<double> values_;
};

RealField operator+(RealField lhs, const RealField& rhs);
RealField operator-(RealField lhs, const RealField& rhs);
RealField operator*(double s, RealField f);

/// Fourier coefficients on the full lattice, FFT-ordered per axis. Coefficients
/// of real fields are Hermitian: c(-k) = conj(c(k)).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, std::vector<Complex> coefficients);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<Complex> coefficients() { return coeffs_; }
  std::span<const Complex> coefficients() const { return coeffs_; }

  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

/// Throws std::invalid_argument unless both fields live on the same grid.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace thermogas
