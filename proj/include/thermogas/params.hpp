#pragma once

namespace thermogas {

/// Variable part of the conductivity, kappa3(theta) = kappa3_bar + profile(theta - theta_bar).
struct ConductivityProfile {
  enum class Kind { zero, tanh };
  Kind kind = Kind::zero;
  /// Amplitude alpha >= 0 of alpha * tanh(theta~).
  double alpha = 0.0;

  double value(double theta_tilde) const;
  double derivative(double theta_tilde) const;
  double second_derivative(double theta_tilde) const;
  /// sup |profile'| and sup |profile''| over the real line.
  double derivative_bound() const;
  double second_derivative_bound() const;
};

struct ModelParams {
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double kappa3_bar = 1.0;
  ConductivityProfile kappa3_var;
  double rho_bar = 1.0;
  double theta_bar = 1.0;
  /// Floor for 1 + a (and for rho when mapping to the a-form).
  double eps_a = 0.1;

  /// kappa3 at absolute temperature theta.
  double kappa3(double theta) const { return kappa3_bar + kappa3_var.value(theta - theta_bar); }

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;

  /// Throws unless the equilibrium is (1, 1), which the a-form and the
  /// integrators assume.
  void require_unit_equilibrium() const;
};

}  // namespace thermogas
