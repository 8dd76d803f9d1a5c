#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "thermogas/diagnostics.hpp"
#include "thermogas/fixed_point.hpp"
#include "thermogas/littlewood_paley.hpp"

namespace thermogas {

/// Shortest round-trip decimal form of a double ("%.17g").
std::string format_number(double x);

/// time,h2_a,h2_theta,besov_a,besov_theta,linf_a,linf_theta,mass,min_rho,min_theta
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// time,X,mass,min_rho,min_theta,identity_residual_1,identity_residual_2,I1,...,I7,I8
void write_energy_csv(std::ostream& out, const EnergyReport& report);

/// iteration,e_norm,difference,ratio
void write_fixedpoint_csv(std::ostream& out, const FixedPointReport& report);

/// One line per key=value item: status, iterations, residual, smallness verdict.
void write_fixedpoint_summary(std::ostream& out, const FixedPointReport& report);

/// j,weighted,cumulative
void write_besov_csv(std::ostream& out, const std::vector<BesovBlock>& blocks);

/// lambda,T,dt,discrepancy,reference_norm,critical_norm_ratio
struct ScalingRow {
  int lambda;
  double T;
  double dt;
  ScalingResult result;
  double critical_norm_ratio;
};
void write_scaling_csv(std::ostream& out, const ScalingRow& row);

}  // namespace thermogas
