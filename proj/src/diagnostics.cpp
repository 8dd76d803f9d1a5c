#include "thermogas/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thermogas/littlewood_paley.hpp"
#include "thermogas/norms.hpp"
#include "thermogas/spectral.hpp"
#include "thermogas/thermo.hpp"

namespace thermogas {

namespace {

void require_snapshots(const Trajectory& traj) {
  if (traj.states.size() < 3 || traj.times.size() != traj.states.size()) {
    throw std::invalid_argument("diagnostic needs at least 3 snapshots");
  }
}

TildeState tilde_of(const AState& s, const ModelParams& params) { return to_tilde(to_primitive(s, params), params); }

// L^d * sum_k w(|k|^2) |c_k|^2.
template <class W>
double weighted_energy(const SpectralField& g, W w) {
  const Grid& grid = g.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) acc += w(grid.k_squared(i)) * std::norm(g[i]);
  return acc * grid.volume();
}

double integral(const RealField& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i];
  return acc * f.grid().cell_volume();
}

double grad_dot(const std::vector<RealField>& u, const std::vector<RealField>& v, std::size_t i) {
  double s = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) s += u[a][i] * v[a][i];
  return s;
}

std::vector<RealField> grad_of(const SpectralField& hat) {
  std::vector<RealField> out;
  for (const auto& g : gradient(hat)) out.push_back(inverse(g));
  return out;
}

// Three-point time derivative of the theta~ fields at snapshot i.
RealField theta_rate(const Trajectory& traj, const std::vector<TildeState>& tilde, std::size_t i) {
  std::array<std::size_t, 3> pts{};
  const auto w = derivative_weights(traj.times, i, pts);
  RealField out(traj.grid);
  for (int j = 0; j < 3; ++j) out += w[j] * tilde[pts[j]].theta;
  return out;
}

}  // namespace

double total_mass(const PrimitiveState& state) { return integral(state.rho); }

std::pair<double, double> positivity_minima(const PrimitiveState& state) {
  return {state.rho.min(), state.theta.min()};
}

std::vector<double> energy_functional_X(const Trajectory& traj, const ModelParams& params) {
  require_snapshots(traj);
  std::vector<TildeState> tilde;
  for (const auto& s : traj.states) tilde.push_back(tilde_of(s, params));

  auto h2 = [](double k2) { return 1.0 + k2 * k2; };
  auto grad_h2 = [](double k2) { return k2 * (1.0 + k2 * k2); };
  auto h1 = [](double k2) { return 1.0 + k2; };

  std::vector<double> X;
  double sup = 0.0;
  double integ = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < tilde.size(); ++i) {
    const auto r_hat = forward(tilde[i].rho);
    const auto t_hat = forward(tilde[i].theta);
    sup = std::max(sup, weighted_energy(r_hat, h2) + weighted_energy(t_hat, h2));
    const double rate = weighted_energy(forward(theta_rate(traj, tilde, i)), h1);
    const double integrand = weighted_energy(r_hat, grad_h2) + weighted_energy(t_hat, grad_h2) + rate;
    if (i > 0) integ += 0.5 * (traj.times[i] - traj.times[i - 1]) * (integrand + prev);
    prev = integrand;
    X.push_back(sup + integ);
  }
  return X;
}

std::vector<IdentityTerms> l2_energy_identity(const Trajectory& traj, const ModelParams& params) {
  require_snapshots(traj);
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  const auto& prof = params.kappa3_var;

  std::vector<TildeState> tilde;
  std::vector<double> r2, t2;
  for (const auto& s : traj.states) {
    tilde.push_back(tilde_of(s, params));
    r2.push_back(lp_norm(tilde.back().rho, 2.0));
    t2.push_back(lp_norm(tilde.back().theta, 2.0));
  }
  for (auto& v : r2) v *= v;
  for (auto& v : t2) v *= v;

  std::vector<IdentityTerms> out;
  for (std::size_t i = 0; i < tilde.size(); ++i) {
    const RealField& r = tilde[i].rho;
    const RealField& t = tilde[i].theta;
    const Grid& grid = r.grid();
    const auto r_hat = forward(r);
    const auto t_hat = forward(t);
    RealField prod(grid);
    for (std::size_t p = 0; p < grid.size(); ++p) prod[p] = r[p] * t[p];
    const auto rt_hat = dealias(forward(prod));

    const auto gr = grad_of(r_hat);
    const auto gt = grad_of(t_hat);
    const auto grt = grad_of(rt_hat);
    SpectralField lap_p_hat = laplacian(r_hat);
    lap_p_hat += laplacian(t_hat);
    lap_p_hat += laplacian(rt_hat);
    const RealField lap_p = inverse(lap_p_hat);
    const RealField rate = theta_rate(traj, tilde, i);

    RealField f1(grid), f2(grid), f3(grid), f4(grid), f5(grid), f6(grid), f7(grid), f8(grid);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const double gtr = grad_dot(gt, gr, p);
      const double grtr = grad_dot(grt, gr, p);
      const double grtt = grad_dot(grt, gt, p);
      const double gtt = grad_dot(gt, gt, p);
      f1[p] = -k1 * gtr;
      f2[p] = -k1 * grtr;
      f3[p] = -k1 * k1 * gtr;
      f4[p] = -k1 * k1 * grtt;
      f5[p] = k1 * (k1 + k2) * (gtr + gtt + grtt) * t[p];
      f6[p] = -prof.value(t[p]) * gtt;
      f7[p] = -k2 * r[p] * t[p] * rate[p];
      f8[p] = k1 * k1 * t[p] * t[p] * lap_p[p];
    }
    IdentityTerms terms;
    terms.I = {integral(f1), integral(f2), integral(f3), integral(f4),
               integral(f5), integral(f6), integral(f7), integral(f8)};

    std::array<std::size_t, 3> pts{};
    const auto w = derivative_weights(traj.times, i, pts);
    double dr2 = 0.0, dt2 = 0.0;
    for (int j = 0; j < 3; ++j) {
      dr2 += w[j] * r2[pts[j]];
      dt2 += w[j] * t2[pts[j]];
    }
    const double grad_r2 = hdot_norm(r_hat, 1.0);
    const double grad_t2 = hdot_norm(t_hat, 1.0);
    terms.lhs1 = 0.5 * dr2 + k1 * grad_r2 * grad_r2;
    terms.lhs2 = 0.5 * k2 * dt2 + (k1 * k1 + params.kappa3_bar) * grad_t2 * grad_t2;
    double rhs2 = 0.0;
    for (int k = 2; k < 8; ++k) rhs2 += terms.I[k];
    terms.residual1 = std::abs(terms.lhs1 - terms.I[0] - terms.I[1]);
    terms.residual2 = std::abs(terms.lhs2 - rhs2);
    out.push_back(terms);
  }
  return out;
}

EnergyReport energy_report(const Trajectory& traj, const ModelParams& params) {
  EnergyReport rep;
  rep.times = traj.times;
  rep.X = energy_functional_X(traj, params);
  rep.identity = l2_energy_identity(traj, params);
  for (const auto& s : traj.states) {
    const auto prim = to_primitive(s, params);
    rep.mass.push_back(total_mass(prim));
    const auto [mr, mt] = positivity_minima(prim);
    rep.min_rho.push_back(mr);
    rep.min_theta.push_back(mt);
  }
  return rep;
}

double min_entropy_production(const Trajectory& traj, const ModelParams& params) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& s : traj.states) {
    const auto d = darcy_and_production(to_primitive(s, params), params);
    worst = std::min(worst, d.production.min());
  }
  return worst;
}

RealField compress(const RealField& u, int lambda) {
  if (lambda < 1) throw std::invalid_argument("lambda must be a positive integer");
  const Grid& grid = u.grid();
  RealField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.unflatten(i);
    for (int a = 0; a < grid.dim(); ++a) idx[a] = (lambda * idx[a]) % grid.n();
    out[i] = u[grid.flatten(idx)];
  }
  return out;
}

namespace {

void require_resolved(const RealField& u, int lambda) {
  const Grid& grid = u.grid();
  const auto hat = forward(u);
  double scale = 0.0;
  for (const auto& c : hat.coefficients()) scale = std::max(scale, std::abs(c));
  for (std::size_t i = 0; i < hat.size(); ++i) {
    if (std::abs(hat[i]) <= 1e-13 * scale) continue;
    const auto m = grid.modes(i);
    for (int a = 0; a < grid.dim(); ++a) {
      if (!within_dealias_band(lambda * m[a], grid.n())) {
        throw std::invalid_argument("scaled data has modes outside the dealiasing band");
      }
    }
  }
}

}  // namespace

ScalingResult scaling_test(const AState& initial, const ModelParams& params, int lambda, double T, double dt,
                           Scheme scheme) {
  if (lambda < 2) throw std::invalid_argument("lambda must be an integer >= 2");
  require_resolved(initial.a, lambda);
  require_resolved(initial.theta, lambda);
  const double l2 = static_cast<double>(lambda) * lambda;

  SimulateOptions slow;
  slow.T = l2 * T;
  slow.dt = dt;
  slow.scheme = scheme;
  slow.record_norms = false;
  const long long steps = std::llround(T * l2 / dt);
  slow.snapshot_stride = static_cast<int>(steps);
  SimulateOptions fast = slow;
  fast.T = T;
  fast.dt = dt / l2;

  const Trajectory ref = simulate(initial, params, slow);
  const Trajectory scaled =
      simulate({compress(initial.a, lambda), compress(initial.theta, lambda)}, params, fast);
  if (ref.breached || scaled.breached) throw InvariantViolation("scaling run breached an invariant", 0, 0.0);

  const AState& u = ref.states.back();
  const AState& v = scaled.states.back();
  const RealField ua = compress(u.a, lambda);
  const RealField ut = compress(u.theta, lambda);
  const double ea = lp_norm(v.a - ua, 2.0);
  const double et = lp_norm(v.theta - ut, 2.0);
  const double na = lp_norm(u.a, 2.0);
  const double nt = lp_norm(u.theta, 2.0);
  const double ref_norm = std::sqrt(na * na + nt * nt);
  const double gap = std::sqrt(ea * ea + et * et);
  return {ref_norm > 0.0 ? gap / ref_norm : gap, ref_norm};
}

double critical_norm_ratio(const RealField& u, int lambda, double s) {
  if (lambda < 1) throw std::invalid_argument("lambda must be a positive integer");
  require_resolved(u, lambda);
  const DyadicFamily family(u.grid());
  const BesovSpec spec{s, 2.0, 1.0};
  const double base = besov_norm(family, u, spec);
  if (!(base > 0.0)) throw std::invalid_argument("critical norm ratio of a constant field");
  const double cell = std::pow(static_cast<double>(lambda), -0.5 * u.grid().dim());
  return cell * besov_norm(family, compress(u, lambda), spec) / base;
}

}  // namespace thermogas
