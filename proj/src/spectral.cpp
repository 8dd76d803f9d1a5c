#include "thermogas/spectral.hpp"

#include <cstdlib>
#include <stdexcept>

#include "fft_engine.hpp"
#include "spectral_tables.hpp"

namespace thermogas {

SpectralField forward(const RealField& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> buf(f.values().begin(), f.values().end());
  detail::FftEngine::for_grid(grid).forward(buf);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : buf) c *= scale;
  return SpectralField(grid, std::move(buf));
}

RealField inverse(const SpectralField& g) {
  const Grid& grid = g.grid();
  std::vector<Complex> buf(g.coefficients().begin(), g.coefficients().end());
  detail::FftEngine::for_grid(grid).backward(buf);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return RealField(grid, std::move(out));
}

SpectralField partial(const SpectralField& g, int axis) {
  const Grid& grid = g.grid();
  if (axis < 0 || axis >= grid.dim()) throw std::invalid_argument("derivative axis out of range");
  const auto& ik = detail::SpectralTables::for_grid(grid).derivative[axis];
  SpectralField out(grid);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = Complex(-ik[i] * g[i].imag(), ik[i] * g[i].real());
  return out;
}

std::vector<SpectralField> gradient(const SpectralField& g) {
  std::vector<SpectralField> out;
  out.reserve(static_cast<std::size_t>(g.grid().dim()));
  for (int a = 0; a < g.grid().dim(); ++a) out.push_back(partial(g, a));
  return out;
}

SpectralField laplacian(const SpectralField& g) {
  const auto& k2 = detail::SpectralTables::for_grid(g.grid()).k_squared;
  SpectralField out(g.grid());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = -k2[i] * g[i];
  return out;
}

bool within_dealias_band(int m, int n) { return 3 * std::abs(m) <= n; }

void dealias_in_place(SpectralField& g) {
  const auto& keep = detail::SpectralTables::for_grid(g.grid()).keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!keep[i]) g[i] = 0.0;
  }
}

SpectralField dealias(const SpectralField& g) {
  SpectralField out = g;
  dealias_in_place(out);
  return out;
}

std::vector<RealField> gradient(const RealField& f) {
  const auto spectral = forward(f);
  std::vector<RealField> out;
  for (int a = 0; a < f.grid().dim(); ++a) out.push_back(inverse(partial(spectral, a)));
  return out;
}

RealField laplacian(const RealField& f) { return inverse(laplacian(forward(f))); }

RealField divergence(const std::vector<RealField>& v) {
  if (v.empty()) throw std::invalid_argument("divergence of an empty vector field");
  const Grid& grid = v.front().grid();
  if (static_cast<int>(v.size()) != grid.dim()) {
    throw std::invalid_argument("divergence needs one component per axis");
  }
  SpectralField acc(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    require_same_grid(grid, v[a].grid(), "divergence");
    acc += partial(forward(v[a]), a);
  }
  return inverse(acc);
}

RealField dealias(const RealField& f) { return inverse(dealias(forward(f))); }

}  // namespace thermogas
