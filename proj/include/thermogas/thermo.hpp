#pragma once

#include <array>
#include <vector>

#include "thermogas/field.hpp"
#include "thermogas/params.hpp"
#include "thermogas/state.hpp"

namespace thermogas {

/// Pointwise thermodynamic state derived from the ideal-gas free energy
/// psi = kappa1*theta*rho*ln(rho) - kappa2*rho*theta*ln(theta).
struct StateFunctions {
  double psi;        ///< free energy
  double eta;        ///< entropy, -d psi / d theta
  double e;          ///< internal energy, psi + eta*theta
  double p;          ///< pressure, kappa1*rho*theta
  double eta_theta;  ///< d eta / d theta = kappa2*rho/theta
};

/// Throws std::invalid_argument unless rho > 0 and theta > 0.
StateFunctions state_functions(double rho, double theta, const ModelParams& params);

/// Darcy velocity u = -grad(p)/rho, entropy production
/// (1/theta)(rho|u|^2 + kappa3|grad theta|^2/theta) and work flux
/// W = -(e_rho*rho + e_eta*eta) u.
struct DarcyFields {
  std::vector<RealField> velocity;
  RealField production;
  std::vector<RealField> work_flux;
};

/// Throws InvariantViolation on non-positive states or where kappa3(theta) < 0
/// (the exception carries the location and value of the minimum).
DarcyFields darcy_and_production(const PrimitiveState& state, const ModelParams& params);

/// Time derivatives of the two unknowns of a formulation.
struct Tendencies {
  RealField first;   ///< d/dt of rho, rho~ or a
  RealField second;  ///< d/dt of theta or theta~
};

/// d_t rho = kappa1*Lap(rho theta) and d_t theta extracted from the
/// conservative energy equation by dividing by kappa2*rho.
Tendencies rhs_primitive(const PrimitiveState& state, const ModelParams& params);

/// Same system expanded around equilibrium in (rho~, theta~).
Tendencies rhs_tilde(const TildeState& state, const ModelParams& params);

/// Linear part plus (F, G) in (a, theta~).
Tendencies rhs_a_form(const AState& state, const ModelParams& params);

/// Nonlinear forces of the a-form system, dealiased.
struct NonlinearFG {
  RealField F;
  RealField G;
};

/// Throws InvariantViolation where 1 + b < eps_a.
NonlinearFG nonlinear_fg(const RealField& b, const RealField& tau, const ModelParams& params);

/// Expanded differences between two evaluations of (F, G), plus the direct
/// differences for comparison. J holds the eight G-term differences; the
/// combination is
///   dG = 2k1^2 J1 - (3k1^2 + k1 k2) J2 - k1^2 J3 + k1^2 J4 + k3bar J5 + k1^2 J6
///        + J7 + k1(k1 + k2) J8.
struct DifferenceFG {
  RealField dF;
  RealField dG;
  std::array<RealField, 8> J;
  RealField direct_dF;
  RealField direct_dG;
};

DifferenceFG difference_fg(const RealField& b1, const RealField& tau1, const RealField& b2,
                           const RealField& tau2, const ModelParams& params);

namespace detail {

/// Dealiased spectral (F, G) from spectral (b, tau); the integrator hot path.
std::array<SpectralField, 2> nonlinear_fg_hat(const SpectralField& b_hat, const SpectralField& tau_hat,
                                              const ModelParams& params);

/// Nonlinear remainder of the tilde system, (rho~_t, theta~_t) minus its linear
/// part, in spectral space. The density component is kappa1*Lap of a dealiased
/// product, so its k = 0 coefficient is exactly zero.
std::array<SpectralField, 2> tilde_nonlinearity_hat(const SpectralField& rho_hat,
                                                    const SpectralField& theta_hat,
                                                    const ModelParams& params);

}  // namespace detail

}  // namespace thermogas
