#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermogas/integrator.hpp"

namespace thermogas {

/// (F, G) sampled at the start of each step; held constant over the step.
struct Forcing {
  std::vector<RealField> F;
  std::vector<RealField> G;
};

/// E(T) norm of one trajectory component family:
/// max_t ||u||_{Bdot^{3/2}_{2,1}} + trapezoid_t ||Lap u||_{Bdot^{3/2}_{2,1}},
/// summed over a and theta~. With p = 2 the Hessian and the Laplacian give the
/// same block norms, so Lap stands in for the second derivatives.
double e_norm(const Trajectory& traj);

/// E(T) norm of the snapshot-wise difference of two trajectories on the same times.
double e_distance(const Trajectory& x, const Trajectory& y);

/// max_t of the L^2 norm of the (a, theta~) difference.
double linf_l2_distance(const Trajectory& x, const Trajectory& y);

/// Linear system with prescribed forces, one snapshot per step. Throws
/// std::invalid_argument unless the forcing has one sample per step.
Trajectory solve_linearized(const RealField& a0, const RealField& theta0, const Forcing& forcing,
                            const ModelParams& params, double T, double dt);

/// Evaluates (F, G) along (b, tau) and solves the linear system from (a0, theta0).
/// Throws InvariantViolation when 1 + b drops below eps_a.
Trajectory phi_map(const Trajectory& b_tau, const RealField& a0, const RealField& theta0,
                   const ModelParams& params, double T, double dt);

struct SmallnessReport {
  double data_norm;      ///< ||a0||_{Bdot^{3/2}_{2,1}} + ||theta0||_{Bdot^{3/2}_{2,1}}
  double radius;         ///< c
  double bound;          ///< c / (2 M)
  bool data_small;       ///< data_norm <= bound
  std::optional<double> solution_norm;  ///< E(T) of a computed solution
  std::optional<bool> contained;        ///< solution_norm <= c
};

SmallnessReport check_smallness(const RealField& a0, const RealField& theta0, double c_radius, double M_const,
                                const Trajectory* solution = nullptr);

enum class PicardStatus { converged, max_iter, diverged };

std::string to_string(PicardStatus s);

struct FixedPointReport {
  std::vector<double> iterates;            ///< E(T) norm of iterate n+1
  std::vector<double> differences;         ///< E(T) norm of iterate n+1 - iterate n
  std::vector<double> contraction_ratios;  ///< differences[n+1] / differences[n]
  PicardStatus status = PicardStatus::max_iter;
  bool converged = false;
  double final_residual = 0.0;  ///< max a-form PDE residual of the limit
  SmallnessReport smallness{};
  double direct_e_distance = 0.0;   ///< E(T) distance to a direct ETDRK2 run
  double direct_l2_distance = 0.0;  ///< L^inf_T L^2 distance to the same run
  std::string message;              ///< why the iteration stopped early, if it did
};

struct PicardOptions {
  double T = 1.0;
  double dt = 1e-2;
  double tol = 1e-12;
  int max_iter = 30;
  double c_radius = 0.05;
  double M_const = 1.0;
  /// Run the direct simulation and fill the distances.
  bool cross_validate = true;
};

struct PicardResult {
  Trajectory solution;
  FixedPointReport report;
};

/// Iterate 0 is the free linear evolution; iterate n+1 = phi_map(iterate n).
/// Stops when the E(T) difference is <= tol, after max_iter maps, or when the
/// difference grows three times in a row.
PicardResult picard_iterate(const RealField& a0, const RealField& theta0, const ModelParams& params,
                            const PicardOptions& options);

}  // namespace thermogas
