#pragma once

#include <complex>
#include <span>

#include "thermogas/grid.hpp"

namespace thermogas::detail {

/// In-place unnormalized c2c transforms for one (d, n) shape. Plans are built
/// once and shared; execution is safe from several threads at once.
class FftEngine {
 public:
  static const FftEngine& for_grid(const Grid& grid);

  /// sum_x f(x) exp(-i k.x), no scaling.
  void forward(std::span<std::complex<double>> data) const;
  /// sum_k c(k) exp(+i k.x), no scaling.
  void backward(std::span<std::complex<double>> data) const;

  FftEngine(int dim, int n);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

 private:
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace thermogas::detail
