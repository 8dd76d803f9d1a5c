#include "thermogas/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace thermogas {

double ConductivityProfile::value(double t) const {
  return kind == Kind::tanh ? alpha * std::tanh(t) : 0.0;
}

double ConductivityProfile::derivative(double t) const {
  if (kind != Kind::tanh) return 0.0;
  const double c = std::cosh(t);
  return alpha / (c * c);
}

double ConductivityProfile::second_derivative(double t) const {
  if (kind != Kind::tanh) return 0.0;
  const double c = std::cosh(t);
  return -2.0 * alpha * std::tanh(t) / (c * c);
}

double ConductivityProfile::derivative_bound() const { return kind == Kind::tanh ? alpha : 0.0; }

double ConductivityProfile::second_derivative_bound() const {
  // max of 2 sech^2 tanh is 4 / (3 sqrt 3)
  return kind == Kind::tanh ? alpha * 4.0 / (3.0 * std::sqrt(3.0)) : 0.0;
}

void ModelParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
  };
  positive(kappa1, "kappa1");
  positive(kappa2, "kappa2");
  positive(kappa3_bar, "kappa3_bar");
  positive(rho_bar, "rho_bar");
  positive(theta_bar, "theta_bar");
  positive(eps_a, "eps_a");
  if (eps_a >= 1.0) throw std::invalid_argument("eps_a must be below 1");
  if (!(kappa3_var.alpha >= 0.0) || !std::isfinite(kappa3_var.alpha)) {
    throw std::invalid_argument("alpha must be non-negative and finite");
  }
}

void ModelParams::require_unit_equilibrium() const {
  if (rho_bar != 1.0 || theta_bar != 1.0) {
    throw std::invalid_argument("the a-form and the integrators assume equilibrium (rho_bar, theta_bar) = (1, 1)");
  }
}

}  // namespace thermogas
