#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>

#include "thermogas/field.hpp"
#include "thermogas/params.hpp"

namespace thermogas {

/// A pointwise invariant (positivity, denominator floor) failed. Carries the
/// first offending grid point so a run can report where it broke.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(const std::string& what, std::size_t index, double value)
      : std::runtime_error(what + " at grid index " + std::to_string(index) + " (value " +
                           std::to_string(value) + ")"),
        index_(index),
        value_(value) {}

  std::size_t index() const { return index_; }
  double value() const { return value_; }

 private:
  std::size_t index_;
  double value_;
};

/// (rho, theta): density and absolute temperature.
struct PrimitiveState {
  RealField rho;
  RealField theta;
};

/// (rho~, theta~) = (rho - rho_bar, theta - theta_bar).
struct TildeState {
  RealField rho;
  RealField theta;
};

/// (a, theta~) with a = 1/rho - 1.
struct AState {
  RealField a;
  RealField theta;
};

enum class Formulation { primitive, tilde, a_form };

using AnyState = std::variant<PrimitiveState, TildeState, AState>;

/// Throws InvariantViolation at the first point with rho <= 0 or theta <= 0.
void check_positive(const PrimitiveState& s);

/// Throws InvariantViolation at the first point with 1 + a < eps.
void check_floor(const RealField& a, double eps);

TildeState to_tilde(const PrimitiveState& s, const ModelParams& p);
PrimitiveState to_primitive(const TildeState& s, const ModelParams& p);
/// rho must stay above eps_a.
AState to_a_form(const PrimitiveState& s, const ModelParams& p);
/// 1 + a must stay above eps_a.
PrimitiveState to_primitive(const AState& s, const ModelParams& p);

/// Converts any formulation into the requested one.
AnyState change_variables(const AnyState& state, Formulation target, const ModelParams& p);

}  // namespace thermogas
