#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "thermogas/field.hpp"
#include "thermogas/params.hpp"
#include "thermogas/state.hpp"

namespace thermogas {

/// Row-major 2x2 real matrix.
using Mat2 = std::array<double, 4>;

/// Which pair of unknowns the linear operator acts on. The tilde operator is the
/// a-form operator with both off-diagonal signs flipped (a is close to -rho~).
enum class LinearForm { a_form, tilde };

/// M(k)/|k|^2 for the chosen form.
Mat2 linear_symbol(const ModelParams& params, LinearForm form);

/// Per-mode e^{M dt}, dt*phi1(M dt) and dt*phi2(M dt), with
/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2. The second matrix is
/// the Duhamel weight: integral of e^{Ms} over [0, dt].
struct ModeMatrices {
  Mat2 E;
  Mat2 W;
  Mat2 W2;
};

class LinearPropagator {
 public:
  LinearPropagator(const Grid& grid, const ModelParams& params, double dt, LinearForm form = LinearForm::a_form);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }
  LinearForm form() const { return form_; }
  const ModeMatrices& mode(std::size_t flat) const { return modes_[slot_[flat]]; }

  /// True when the closed-form eigen route was replaced by the augmented-matrix fallback.
  bool used_fallback() const { return fallback_; }

 private:
  Grid grid_;
  double dt_;
  LinearForm form_;
  bool fallback_ = false;
  std::vector<ModeMatrices> modes_;
  std::vector<std::size_t> slot_;
};

/// Matrix functions of a single 2x2 matrix X: e^X, phi1(X), phi2(X). Closed form
/// through the eigenvalues when their relative gap exceeds 1e-6, else through a
/// scaled-and-squared exponential of a 6x6 augmented matrix.
struct PhiFunctions {
  Mat2 phi0;
  Mat2 phi1;
  Mat2 phi2;
  bool fallback;
};
PhiFunctions phi_functions(const Mat2& X);

/// Same, always through the augmented exponential.
PhiFunctions phi_functions_augmented(const Mat2& X);

enum class Scheme { etd1, etdrk2 };

/// The two unknowns of a formulation in spectral space.
struct SpectralPair {
  SpectralField first;
  SpectralField second;
};

/// Extra forcing added to the nonlinear term, as a function of time.
using SourceFn = std::function<SpectralPair(double t)>;

struct StepOptions {
  /// Stepping variables: a_form (the default) or tilde. Primitive runs are
  /// converted to tilde, stepped, and converted back.
  Formulation formulation = Formulation::a_form;
  /// Zero the nonlinear terms.
  bool linear_only = false;
  SourceFn source;
};

/// Exponential time differencing with the exact linear propagator.
/// ETD1: u+ = E u + W N(u). ETDRK2: with p = E u + W N(u),
/// u+ = p + W2 (N(p) - N(u)).
class Stepper {
 public:
  Stepper(const Grid& grid, const ModelParams& params, double dt, Scheme scheme, StepOptions options = {});

  /// Advances u from time t by dt in place.
  void step(SpectralPair& u, double t) const;

  /// N(u) at time t, including the source.
  SpectralPair nonlinearity(const SpectralPair& u, double t) const;

  const LinearPropagator& propagator() const { return prop_; }
  double dt() const { return prop_.dt(); }

 private:
  ModelParams params_;
  Scheme scheme_;
  StepOptions options_;
  LinearPropagator prop_;
};

/// Applies the per-mode matrix field `pick` of the propagator to (x, y).
SpectralPair apply_matrices(const LinearPropagator& prop, const Mat2 ModeMatrices::*pick, const SpectralPair& u);

/// One step of the a-form system. Throws InvariantViolation if the new state
/// breaks the floor 1 + a >= eps_a or theta > 0.
AState step(const AState& state, const ModelParams& params, double dt, Scheme scheme);

/// Per-snapshot norms. Besov norms are Bdot^{3/2}_{2,1}.
struct NormRecord {
  double h2_a;
  double h2_theta;
  double besov_a;
  double besov_theta;
  double linf_a;
  double linf_theta;
  double mass;
  double min_rho;
  double min_theta;
};

struct Trajectory {
  Grid grid;
  std::vector<double> times;
  std::vector<AState> states;
  std::vector<NormRecord> norms;
  bool breached = false;
  std::string breach_message;
};

struct SimulateOptions {
  double T = 1.0;
  double dt = 1e-3;
  Scheme scheme = Scheme::etdrk2;
  /// Steps between stored snapshots; T/dt must be a multiple of it.
  int snapshot_stride = 1;
  StepOptions step;
  /// Fill Trajectory::norms.
  bool record_norms = true;
};

/// 0.5/(kappa_max |k|^2_max) with kappa_max = max(kappa1, (kappa1^2 + kappa3_bar)/kappa2).
double default_dt(const Grid& grid, const ModelParams& params);

/// Evolves the a-form state. On an invariant breach the trajectory up to the
/// last good snapshot is returned with `breached` set. Throws
/// std::invalid_argument on inconsistent T, dt or stride.
Trajectory simulate(const AState& initial, const ModelParams& params, const SimulateOptions& options);

/// Snapshot norms of a single state.
NormRecord measure(const AState& state, const ModelParams& params);

/// L^2 norm of (D_t u - rhs(u) - source) at each interior snapshot, with D_t the
/// three-point difference on the (possibly non-uniform) snapshot times. The
/// state is converted to the requested formulation before differencing.
/// Throws std::invalid_argument with fewer than 3 snapshots.
std::vector<double> pde_residual(const Trajectory& traj, const ModelParams& params, Formulation formulation,
                                 const SourceFn& source = {});

/// Time-derivative weights at snapshot i (one-sided second-order at the ends).
std::array<double, 3> derivative_weights(const std::vector<double>& times, std::size_t i,
                                         std::array<std::size_t, 3>& points);

}  // namespace thermogas
