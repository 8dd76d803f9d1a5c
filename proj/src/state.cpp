#include "thermogas/state.hpp"

namespace thermogas {

void check_positive(const PrimitiveState& s) {
  require_same_grid(s.rho.grid(), s.theta.grid(), "primitive state");
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (!(s.rho[i] > 0.0)) throw InvariantViolation("density not positive", i, s.rho[i]);
  }
  for (std::size_t i = 0; i < s.theta.size(); ++i) {
    if (!(s.theta[i] > 0.0)) throw InvariantViolation("temperature not positive", i, s.theta[i]);
  }
}

void check_floor(const RealField& a, double eps) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(1.0 + a[i] >= eps)) throw InvariantViolation("1 + a below floor", i, 1.0 + a[i]);
  }
}

TildeState to_tilde(const PrimitiveState& s, const ModelParams& p) {
  check_positive(s);
  TildeState out{s.rho, s.theta};
  for (double& v : out.rho.values()) v -= p.rho_bar;
  for (double& v : out.theta.values()) v -= p.theta_bar;
  return out;
}

PrimitiveState to_primitive(const TildeState& s, const ModelParams& p) {
  PrimitiveState out{s.rho, s.theta};
  for (double& v : out.rho.values()) v += p.rho_bar;
  for (double& v : out.theta.values()) v += p.theta_bar;
  check_positive(out);
  return out;
}

AState to_a_form(const PrimitiveState& s, const ModelParams& p) {
  p.require_unit_equilibrium();
  check_positive(s);
  AState out{s.rho, s.theta};
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (!(s.rho[i] > p.eps_a)) throw InvariantViolation("density below floor for the a-form", i, s.rho[i]);
    out.a[i] = 1.0 / s.rho[i] - 1.0;
  }
  for (double& v : out.theta.values()) v -= 1.0;
  return out;
}

PrimitiveState to_primitive(const AState& s, const ModelParams& p) {
  p.require_unit_equilibrium();
  check_floor(s.a, p.eps_a);
  PrimitiveState out{s.a, s.theta};
  for (std::size_t i = 0; i < s.a.size(); ++i) out.rho[i] = 1.0 / (1.0 + s.a[i]);
  for (double& v : out.theta.values()) v += 1.0;
  check_positive(out);
  return out;
}

AnyState change_variables(const AnyState& state, Formulation target, const ModelParams& p) {
  const PrimitiveState primitive = std::visit(
      [&](const auto& s) -> PrimitiveState {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PrimitiveState>) {
          check_positive(s);
          return s;
        } else {
          return to_primitive(s, p);
        }
      },
      state);
  switch (target) {
    case Formulation::primitive:
      return primitive;
    case Formulation::tilde:
      return to_tilde(primitive, p);
    case Formulation::a_form:
      return to_a_form(primitive, p);
  }
  return primitive;
}

}  // namespace thermogas
