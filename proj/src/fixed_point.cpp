#include "thermogas/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermogas/littlewood_paley.hpp"
#include "thermogas/norms.hpp"
#include "thermogas/spectral.hpp"
#include "thermogas/thermo.hpp"

namespace thermogas {

namespace {

long long step_count(double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("T and dt must be positive");
  const long long steps = std::llround(T / dt);
  if (steps < 1 || std::abs(static_cast<double>(steps) * dt - T) > 1e-9 * T) {
    throw std::invalid_argument("dt must divide T");
  }
  return steps;
}

struct ComponentNorms {
  double value;
  double lap;
};

ComponentNorms component_norms(const DyadicFamily& family, const RealField& f) {
  const BesovSpec crit{1.5, 2.0, 1.0};
  const auto hat = forward(f);
  return {besov_norm(family, hat, crit), besov_norm(family, laplacian(hat), crit)};
}

// E(T) of a sequence of component fields given by `get(i)`.
template <class Get>
double e_norm_of(const DyadicFamily& family, const std::vector<double>& times, Get get) {
  double sup = 0.0;
  double integral = 0.0;
  double prev_lap = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto n = component_norms(family, get(i));
    sup = std::max(sup, n.value);
    if (i > 0) integral += 0.5 * (times[i] - times[i - 1]) * (n.lap + prev_lap);
    prev_lap = n.lap;
  }
  return sup + integral;
}

void require_matching(const Trajectory& x, const Trajectory& y) {
  if (x.times.size() != y.times.size() || x.states.size() != y.states.size() || !(x.grid == y.grid)) {
    throw std::invalid_argument("trajectories must share grid and time samples");
  }
}

}  // namespace

double e_norm(const Trajectory& traj) {
  if (traj.states.empty()) return 0.0;
  const DyadicFamily family(traj.grid);
  return e_norm_of(family, traj.times, [&](std::size_t i) -> const RealField& { return traj.states[i].a; }) +
         e_norm_of(family, traj.times, [&](std::size_t i) -> const RealField& { return traj.states[i].theta; });
}

double e_distance(const Trajectory& x, const Trajectory& y) {
  require_matching(x, y);
  if (x.states.empty()) return 0.0;
  const DyadicFamily family(x.grid);
  return e_norm_of(family, x.times, [&](std::size_t i) { return x.states[i].a - y.states[i].a; }) +
         e_norm_of(family, x.times, [&](std::size_t i) { return x.states[i].theta - y.states[i].theta; });
}

double linf_l2_distance(const Trajectory& x, const Trajectory& y) {
  require_matching(x, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.states.size(); ++i) {
    const double ea = lp_norm(x.states[i].a - y.states[i].a, 2.0);
    const double et = lp_norm(x.states[i].theta - y.states[i].theta, 2.0);
    worst = std::max(worst, std::sqrt(ea * ea + et * et));
  }
  return worst;
}

Trajectory solve_linearized(const RealField& a0, const RealField& theta0, const Forcing& forcing,
                            const ModelParams& params, double T, double dt) {
  params.validate();
  params.require_unit_equilibrium();
  const Grid& grid = a0.grid();
  require_same_grid(grid, theta0.grid(), "solve_linearized");
  const long long steps = step_count(T, dt);
  if (forcing.F.size() != static_cast<std::size_t>(steps) || forcing.G.size() != forcing.F.size()) {
    throw std::invalid_argument("forcing must have one (F, G) sample per step");
  }
  const LinearPropagator prop(grid, params, dt);

  Trajectory traj;
  traj.grid = grid;
  traj.times.push_back(0.0);
  traj.states.push_back({a0, theta0});
  SpectralPair u{forward(a0), forward(theta0)};
  for (long long n = 0; n < steps; ++n) {
    SpectralPair N{forward(forcing.F[n]), forward(forcing.G[n])};
    N.second *= 1.0 / params.kappa2;
    SpectralPair next = apply_matrices(prop, &ModeMatrices::E, u);
    const SpectralPair w = apply_matrices(prop, &ModeMatrices::W, N);
    next.first += w.first;
    next.second += w.second;
    u = std::move(next);
    traj.times.push_back(static_cast<double>(n + 1) * dt);
    traj.states.push_back({inverse(u.first), inverse(u.second)});
  }
  return traj;
}

Trajectory phi_map(const Trajectory& b_tau, const RealField& a0, const RealField& theta0,
                   const ModelParams& params, double T, double dt) {
  const long long steps = step_count(T, dt);
  if (b_tau.states.size() != static_cast<std::size_t>(steps) + 1) {
    throw std::invalid_argument("input trajectory must have one snapshot per step");
  }
  Forcing forcing;
  for (long long n = 0; n < steps; ++n) {
    auto fg = nonlinear_fg(b_tau.states[n].a, b_tau.states[n].theta, params);
    forcing.F.push_back(std::move(fg.F));
    forcing.G.push_back(std::move(fg.G));
  }
  return solve_linearized(a0, theta0, forcing, params, T, dt);
}

SmallnessReport check_smallness(const RealField& a0, const RealField& theta0, double c_radius, double M_const,
                                const Trajectory* solution) {
  if (!(c_radius > 0.0) || !(M_const > 0.0)) throw std::invalid_argument("c and M must be positive");
  const DyadicFamily family(a0.grid());
  const BesovSpec crit{1.5, 2.0, 1.0};
  SmallnessReport r{};
  r.data_norm = besov_norm(family, a0, crit) + besov_norm(family, theta0, crit);
  r.radius = c_radius;
  r.bound = c_radius / (2.0 * M_const);
  r.data_small = r.data_norm <= r.bound;
  if (solution != nullptr) {
    r.solution_norm = e_norm(*solution);
    r.contained = *r.solution_norm <= c_radius;
  }
  return r;
}

std::string to_string(PicardStatus s) {
  switch (s) {
    case PicardStatus::converged:
      return "converged";
    case PicardStatus::max_iter:
      return "max_iter";
    case PicardStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

PicardResult picard_iterate(const RealField& a0, const RealField& theta0, const ModelParams& params,
                            const PicardOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (options.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const long long steps = step_count(options.T, options.dt);

  PicardResult result;
  FixedPointReport& rep = result.report;
  rep.smallness = check_smallness(a0, theta0, options.c_radius, options.M_const);

  Forcing zero;
  zero.F.assign(static_cast<std::size_t>(steps), RealField(a0.grid()));
  zero.G = zero.F;
  Trajectory current = solve_linearized(a0, theta0, zero, params, options.T, options.dt);

  int growth = 0;
  for (int it = 0; it < options.max_iter; ++it) {
    Trajectory next;
    try {
      next = phi_map(current, a0, theta0, params, options.T, options.dt);
    } catch (const InvariantViolation& e) {
      rep.status = PicardStatus::diverged;
      rep.message = e.what();
      break;
    }
    const double diff = e_distance(next, current);
    rep.iterates.push_back(e_norm(next));
    if (!rep.differences.empty()) {
      const double prev = rep.differences.back();
      rep.contraction_ratios.push_back(prev > 0.0 ? diff / prev : 0.0);
      growth = diff > prev ? growth + 1 : 0;
    }
    rep.differences.push_back(diff);
    current = std::move(next);
    if (!std::isfinite(diff) || growth >= 3) {
      rep.status = PicardStatus::diverged;
      rep.message = "difference grew for three consecutive iterations";
      break;
    }
    if (diff <= options.tol) {
      rep.status = PicardStatus::converged;
      break;
    }
  }
  rep.converged = rep.status == PicardStatus::converged;

  if (rep.converged) {
    rep.smallness = check_smallness(a0, theta0, options.c_radius, options.M_const, &current);
    if (current.states.size() >= 3) {
      const auto res = pde_residual(current, params, Formulation::a_form);
      rep.final_residual = *std::max_element(res.begin(), res.end());
    }
    if (options.cross_validate) {
      SimulateOptions sim;
      sim.T = options.T;
      sim.dt = options.dt;
      sim.scheme = Scheme::etdrk2;
      sim.record_norms = false;
      const Trajectory direct = simulate({a0, theta0}, params, sim);
      if (!direct.breached) {
        rep.direct_e_distance = e_distance(current, direct);
        rep.direct_l2_distance = linf_l2_distance(current, direct);
      } else {
        rep.message = "direct simulation breached: " + direct.breach_message;
      }
    }
  }
  result.solution = std::move(current);
  return result;
}

}  // namespace thermogas
