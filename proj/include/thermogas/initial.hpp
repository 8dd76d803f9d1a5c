#pragma once

#include <array>
#include <cstdint>

#include "thermogas/params.hpp"
#include "thermogas/state.hpp"

namespace thermogas {

/// splitmix64 finalizer applied to seed + (counter + 1) * golden gamma. Pure
/// function of its arguments, so any draw can be regenerated in isolation.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);

/// Uniform double in [-1, 1) from the top 53 bits of splitmix64.
double uniform_signed(std::uint64_t seed, std::uint64_t counter);

/// Real, mean-free field whose Fourier coefficients are nonzero exactly on the
/// modes with 1 <= max_j |m_j| <= band. Real and imaginary parts of the
/// coefficient at the representative of {m, -m} are uniform in [-1, 1), drawn
/// with counter 2*(flat index of m) + {0, 1} + stream * 2 n^d. Throws
/// std::invalid_argument unless 1 <= band and 3 * band <= n.
RealField random_band_field(const Grid& grid, std::uint64_t seed, std::uint64_t stream, int band);

/// amplitude * cos(k.x) (component cos) or sin(k.x) for the lattice mode m.
RealField single_mode_field(const Grid& grid, const std::array<int, 3>& mode, double amplitude, bool sine = false);

enum class Normalization {
  none,   ///< coefficients scaled by amplitude
  linf,   ///< max over both components of max |u| equals amplitude
  h2,     ///< sqrt of the sum of squared H^2 norms equals amplitude
  besov,  ///< sum of the Bdot^{3/2}_{2,1} norms equals amplitude
};

/// Which pair the random fields are drawn in and normalized in.
enum class DataVariables { a_form, tilde };

/// Random band-limited initial state, returned in (a, theta~). Component 0 uses
/// stream 0, component 1 stream 1.
AState random_band_state(const Grid& grid, std::uint64_t seed, int band, double amplitude, Normalization norm,
                         DataVariables vars, const ModelParams& params);

}  // namespace thermogas
