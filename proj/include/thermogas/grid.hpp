#pragma once

#include <array>
#include <cstddef>

namespace thermogas {

/// Periodic box [0, L)^d sampled with n points per axis.
///
/// Wavenumbers live on the lattice k = (2*pi/L) * m with m in {-n/2, ..., n/2 - 1}
/// per axis. Flat indices are row-major with axis 0 slowest, and FFT order is
/// used for the spectral side (index i maps to m = i for i < n/2, i - n otherwise).
class Grid {
 public:
  Grid() = default;

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }

  /// Number of grid points (and of lattice modes), n^d.
  std::size_t size() const { return size_; }

  /// 2*pi/L, the lattice spacing in wavenumber space.
  double wavenumber_unit() const;

  /// Cell volume (L/n)^d used by grid quadrature.
  double cell_volume() const;

  /// Box volume L^d.
  double volume() const;

  /// Integer mode for a per-axis FFT index.
  int mode_of_index(int i) const { return i < n_ / 2 ? i : i - n_; }

  /// Per-axis FFT index for an integer mode (taken modulo n).
  int index_of_mode(int m) const { return ((m % n_) + n_) % n_; }

  /// Unpacks a flat index into per-axis indices (unused axes are zero).
  std::array<int, 3> unflatten(std::size_t flat) const;

  std::size_t flatten(const std::array<int, 3>& idx) const;

  /// Integer lattice modes of a flat spectral index.
  std::array<int, 3> modes(std::size_t flat) const;

  /// |k|^2 of a flat spectral index.
  double k_squared(std::size_t flat) const;

  /// Largest lattice |k|, sqrt(d) * pi * n / L.
  double max_wavenumber() const;

  /// Physical coordinate of grid point index i along any axis.
  double coordinate(int i) const { return length_ * static_cast<double>(i) / n_; }

  bool operator==(const Grid& other) const = default;

 private:
  friend Grid make_grid(int dim, int n, double length);

  int dim_ = 1;
  int n_ = 8;
  double length_ = 1.0;
  std::size_t size_ = 8;
};

/// Validates and builds a grid. Throws std::invalid_argument when d is not in
/// {1,2,3}, n is not a power of two >= 8, or L <= 0.
Grid make_grid(int dim, int n, double length);

}  // namespace thermogas
