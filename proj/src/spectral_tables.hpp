#pragma once

#include <array>
#include <vector>

#include "thermogas/grid.hpp"

namespace thermogas::detail {

/// Per-mode lookup data for one grid, built once and shared.
struct SpectralTables {
  std::vector<double> k_squared;
  /// i*k_j for axis j with the Nyquist mode zeroed, per flat index.
  std::array<std::vector<double>, 3> derivative;
  /// 1 where every |m_j| <= n/3, else 0.
  std::vector<unsigned char> keep;

  static const SpectralTables& for_grid(const Grid& grid);
};

}  // namespace thermogas::detail
