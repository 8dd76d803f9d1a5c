#pragma once

#include <vector>

#include "thermogas/field.hpp"

namespace thermogas {

/// Forward transform: coefficient of mode k is (1/n^d) * sum_x f(x) exp(-i k.x).
SpectralField forward(const RealField& f);

/// Inverse of forward(); returns the real part of the synthesized field.
RealField inverse(const SpectralField& g);

/// i*k_j * g for every axis j. The Nyquist mode of axis j is zeroed so the
/// result stays Hermitian.
std::vector<SpectralField> gradient(const SpectralField& g);

/// -|k|^2 * g.
SpectralField laplacian(const SpectralField& g);

/// i*k_j * g for a single axis.
SpectralField partial(const SpectralField& g, int axis);

/// Two-thirds rule: zeroes every mode with some |m_j| > n/3.
SpectralField dealias(const SpectralField& g);
void dealias_in_place(SpectralField& g);

/// True when every mode with some |m_j| > n/3 is zero.
bool within_dealias_band(int m, int n);

/// Physical-space helpers built on the spectral operators.
std::vector<RealField> gradient(const RealField& f);
RealField laplacian(const RealField& f);
RealField divergence(const std::vector<RealField>& v);

/// Transforms, dealiases and transforms back.
RealField dealias(const RealField& f);

}  // namespace thermogas
