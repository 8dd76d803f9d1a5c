#pragma once

#include <array>
#include <utility>
#include <vector>

#include "thermogas/integrator.hpp"

namespace thermogas {

/// Box integral of rho.
double total_mass(const PrimitiveState& state);

/// (min rho, min theta) over the grid.
std::pair<double, double> positivity_minima(const PrimitiveState& state);

/// X(t) at every snapshot: running max of ||rho~||_{H^2}^2 + ||theta~||_{H^2}^2 plus
/// the trapezoidal integral of ||grad rho~||_{H^2}^2 + ||grad theta~||_{H^2}^2 +
/// ||d_t theta~||_{H^1}^2, with d_t theta~ from three-point differences of the
/// snapshots. Throws std::invalid_argument with fewer than 3 snapshots.
std::vector<double> energy_functional_X(const Trajectory& traj, const ModelParams& params);

/// Terms of the two L^2 identities at one time, in tilde variables:
///   d/dt (1/2)||rho~||^2 + k1 ||grad rho~||^2 = I1 + I2
///   (k2/2) d/dt ||theta~||^2 + (k1^2 + k3bar) ||grad theta~||^2 = I3 + ... + I8
/// with I7 = -k2 int rho~ theta~ d_t theta~ and I8 = k1^2 int theta~^2 Lap(rho theta).
struct IdentityTerms {
  std::array<double, 8> I{};
  double lhs1 = 0.0;
  double lhs2 = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
};

/// Identity terms at every snapshot. Throws std::invalid_argument with fewer
/// than 3 snapshots.
std::vector<IdentityTerms> l2_energy_identity(const Trajectory& traj, const ModelParams& params);

/// Everything in the energy CSV.
struct EnergyReport {
  std::vector<double> times;
  std::vector<double> X;
  std::vector<double> mass;
  std::vector<double> min_rho;
  std::vector<double> min_theta;
  std::vector<IdentityTerms> identity;
};

EnergyReport energy_report(const Trajectory& traj, const ModelParams& params);

/// Smallest value of the entropy-production field over all snapshots.
double min_entropy_production(const Trajectory& traj, const ModelParams& params);

/// U(lambda x) sampled on the same grid: value i is U at index lambda*i mod n.
RealField compress(const RealField& u, int lambda);

struct ScalingResult {
  double discrepancy;      ///< relative L^2 gap between the two runs at the final time
  double reference_norm;   ///< L^2 norm of the long run's final state
};

/// Evolves U to lambda^2 T with step dt and U(lambda x) to T with step
/// dt/lambda^2, then compares u_lambda(T, x) with u(lambda^2 T, lambda x).
/// Throws std::invalid_argument for lambda < 2 or when U(lambda x) has modes
/// outside the dealiasing band.
ScalingResult scaling_test(const AState& initial, const ModelParams& params, int lambda, double T, double dt,
                           Scheme scheme = Scheme::etdrk2);

/// lambda^{-d/2} ||U(lambda .)||_{Bdot^s_{2,1}} / ||U||_{Bdot^s_{2,1}}. The factor
/// measures U(lambda .) over one period cell, as on the whole space; the ratio
/// is 1 for s = d/2.
double critical_norm_ratio(const RealField& u, int lambda, double s);

}  // namespace thermogas
