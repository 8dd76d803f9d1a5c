#pragma once

#include <limits>

#include "thermogas/field.hpp"

namespace thermogas {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Which norm field_norm() evaluates; `order` is p for Lp and s for Sobolev.
struct NormSpec {
  enum class Kind { lp, sobolev, homogeneous_sobolev };
  Kind kind = Kind::lp;
  double order = 2.0;

  static NormSpec lp(double p) { return {Kind::lp, p}; }
  static NormSpec h(double s) { return {Kind::sobolev, s}; }
  static NormSpec hdot(double s) { return {Kind::homogeneous_sobolev, s}; }
};

/// Grid-quadrature L^p norm with cell weight (L/n)^d; p = infinity is the max.
/// Rectangle rule, so p outside {2, inf} is approximate for non-smooth data.
double lp_norm(const RealField& f, double p);

/// Pointwise Euclidean magnitude of a vector field, then L^p.
double lp_norm(const std::vector<RealField>& v, double p);

/// (L^d * sum_{k != 0} |k|^{2s} |c_k|^2)^{1/2}; matches the L^2 norm at s = 0
/// on mean-free fields.
double hdot_norm(const SpectralField& g, double s);
double hdot_norm(const RealField& f, double s);

/// (||f||_{L^2}^2 + ||f||_{Hdot^s}^2)^{1/2}.
double h_norm(const SpectralField& g, double s);
double h_norm(const RealField& f, double s);

/// L^2 norm from coefficients (Parseval).
double l2_norm(const SpectralField& g);

/// Dispatches on spec. Throws std::invalid_argument for p < 1 or non-finite values.
double field_norm(const RealField& f, const NormSpec& spec);

}  // namespace thermogas
