#include "spectral_tables.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace thermogas::detail {

namespace {

SpectralTables build(const Grid& grid) {
  SpectralTables t;
  const std::size_t size = grid.size();
  const double unit = grid.wavenumber_unit();
  const int nyquist = -grid.n() / 2;
  t.k_squared.resize(size);
  t.keep.resize(size);
  for (int a = 0; a < grid.dim(); ++a) t.derivative[a].resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto m = grid.modes(i);
    t.k_squared[i] = grid.k_squared(i);
    bool keep = true;
    for (int a = 0; a < grid.dim(); ++a) {
      t.derivative[a][i] = m[a] == nyquist ? 0.0 : unit * m[a];
      if (3 * std::abs(m[a]) > grid.n()) keep = false;
    }
    t.keep[i] = keep ? 1 : 0;
  }
  return t;
}

}  // namespace

const SpectralTables& SpectralTables::for_grid(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::unique_ptr<SpectralTables>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{grid.dim(), grid.n(), grid.length()}];
  if (!slot) slot = std::make_unique<SpectralTables>(build(grid));
  return *slot;
}

}  // namespace thermogas::detail
