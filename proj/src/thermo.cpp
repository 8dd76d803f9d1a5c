#include "thermogas/thermo.hpp"

#include <cmath>
#include <stdexcept>

#include "thermogas/spectral.hpp"

namespace thermogas {

namespace {

// A field with its gradient and Laplacian, all in physical space.
struct Jet {
  RealField v;
  std::vector<RealField> grad;
  RealField lap;
};

Jet make_jet(const SpectralField& hat) {
  Jet j{inverse(hat), {}, inverse(laplacian(hat))};
  for (int a = 0; a < hat.grid().dim(); ++a) j.grad.push_back(inverse(partial(hat, a)));
  return j;
}

Jet make_jet(const RealField& f) { return make_jet(forward(f)); }

double dot(const std::vector<RealField>& u, const std::vector<RealField>& v, std::size_t i) {
  double s = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a) s += u[a][i] * v[a][i];
  return s;
}

void check_floor_at(double one_plus_b, double eps, std::size_t i) {
  if (!(one_plus_b >= eps)) throw InvariantViolation("1 + a fell below the floor eps_a", i, one_plus_b);
}

// Dealiased product f*g, spectral.
SpectralField product_hat(const RealField& f, const RealField& g) {
  RealField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * g[i];
  return dealias(forward(out));
}

// Divergence of a vector field whose components are dealiased first.
SpectralField divergence_hat(const std::vector<RealField>& v) {
  SpectralField acc(v.front().grid());
  for (std::size_t a = 0; a < v.size(); ++a) acc += partial(dealias(forward(v[a])), static_cast<int>(a));
  return acc;
}

RealField finish(const RealField& f) { return inverse(dealias(forward(f))); }

struct PointFG {
  double F;
  double G;
};

PointFG point_fg(const Jet& b, const Jet& t, std::size_t i, const ModelParams& p) {
  const double k1 = p.kappa1;
  const double k2 = p.kappa2;
  const double bi = b.v[i];
  const double ti = t.v[i];
  const double q = 1.0 / (1.0 + bi);
  const double gb2 = dot(b.grad, b.grad, i);
  const double gbt = dot(b.grad, t.grad, i);
  const double gt2 = dot(t.grad, t.grad, i);
  const double lb = b.lap[i];
  const double lt = t.lap[i];
  const auto& prof = p.kappa3_var;

  const double F = -2.0 * k1 * (ti + 1.0) * q * gb2 + 2.0 * k1 * gbt - k1 * bi * lt + k1 * ti * lb;
  const double G = 2.0 * k1 * k1 * (ti + 1.0) * (ti + 1.0) * q * q * gb2 -
                   (3.0 * k1 * k1 + k1 * k2) * (ti + 1.0) * q * gbt -
                   k1 * k1 * (ti * ti + 2.0 * ti) * q * lb + k1 * k1 * bi * q * lb +
                   p.kappa3_bar * bi * lt + k1 * k1 * ti * lt +
                   (1.0 + bi) * (prof.value(ti) * lt + prof.derivative(ti) * gt2) +
                   k1 * (k1 + k2) * gt2;
  return {F, G};
}

std::array<SpectralField, 2> fg_from_jets(const Jet& b, const Jet& t, const ModelParams& p) {
  const Grid& grid = b.v.grid();
  RealField F(grid), G(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_floor_at(1.0 + b.v[i], p.eps_a, i);
    const auto fg = point_fg(b, t, i, p);
    F[i] = fg.F;
    G[i] = fg.G;
  }
  return {dealias(forward(F)), dealias(forward(G))};
}

}  // namespace

StateFunctions state_functions(double rho, double theta, const ModelParams& params) {
  if (!(rho > 0.0) || !(theta > 0.0)) {
    throw std::invalid_argument("state functions need rho > 0 and theta > 0");
  }
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  const double lr = std::log(rho);
  const double lt = std::log(theta);
  StateFunctions s{};
  s.psi = k1 * theta * rho * lr - k2 * rho * theta * lt;
  s.eta = -k1 * rho * lr + k2 * rho * (lt + 1.0);
  s.e = s.psi + s.eta * theta;
  s.p = k1 * rho * theta;
  s.eta_theta = k2 * rho / theta;
  return s;
}

DarcyFields darcy_and_production(const PrimitiveState& state, const ModelParams& params) {
  check_positive(state);
  const Grid& grid = state.rho.grid();
  require_same_grid(grid, state.theta.grid(), "darcy_and_production");

  std::size_t worst = 0;
  double k3_min = params.kappa3(state.theta[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double k3 = params.kappa3(state.theta[i]);
    if (k3 < k3_min) {
      k3_min = k3;
      worst = i;
    }
  }
  if (k3_min < 0.0) throw InvariantViolation("conductivity kappa3(theta) is negative; minimum", worst, k3_min);

  RealField pressure(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pressure[i] = params.kappa1 * state.rho[i] * state.theta[i];
  }
  const auto p_hat = dealias(forward(pressure));
  const auto theta_hat = forward(state.theta);

  DarcyFields out;
  std::vector<RealField> grad_theta;
  for (int a = 0; a < grid.dim(); ++a) {
    RealField u = inverse(partial(p_hat, a));
    for (std::size_t i = 0; i < grid.size(); ++i) u[i] = -u[i] / state.rho[i];
    out.velocity.push_back(std::move(u));
    grad_theta.push_back(inverse(partial(theta_hat, a)));
  }

  out.production = RealField(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double th = state.theta[i];
    const double u2 = dot(out.velocity, out.velocity, i);
    const double g2 = dot(grad_theta, grad_theta, i);
    out.production[i] = (state.rho[i] * u2 + params.kappa3(th) * g2 / th) / th;
  }

  for (int a = 0; a < grid.dim(); ++a) {
    RealField w(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double rho = state.rho[i];
      const double th = state.theta[i];
      const auto sf = state_functions(rho, th, params);
      const double e_rho = params.kappa1 * th * (std::log(rho) + 1.0) - params.kappa2 * th * std::log(th);
      w[i] = -(e_rho * rho + th * sf.eta) * out.velocity[a][i];
    }
    out.work_flux.push_back(std::move(w));
  }
  return out;
}

Tendencies rhs_primitive(const PrimitiveState& state, const ModelParams& params) {
  check_positive(state);
  const Grid& grid = state.rho.grid();
  require_same_grid(grid, state.theta.grid(), "rhs_primitive");
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;

  const auto P_hat = product_hat(state.rho, state.theta);
  RealField drho = inverse(laplacian(P_hat));
  drho *= k1;

  const auto theta_hat = forward(state.theta);
  std::vector<RealField> flux_p, flux_k;
  for (int a = 0; a < grid.dim(); ++a) {
    RealField gp = inverse(partial(P_hat, a));
    RealField gt = inverse(partial(theta_hat, a));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      gp[i] *= state.theta[i];
      gt[i] *= params.kappa3(state.theta[i]);
    }
    flux_p.push_back(std::move(gp));
    flux_k.push_back(std::move(gt));
  }
  const RealField div_p = inverse(divergence_hat(flux_p));
  const RealField div_k = inverse(divergence_hat(flux_k));

  RealField dtheta(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double rho = state.rho[i];
    const double th = state.theta[i];
    dtheta[i] = (k1 * (k1 + k2) * div_p[i] + div_k[i] - k2 * th * drho[i]) / (k2 * rho);
  }
  return {std::move(drho), finish(dtheta)};
}

namespace detail {

std::array<SpectralField, 2> tilde_nonlinearity_hat(const SpectralField& rho_hat,
                                                    const SpectralField& theta_hat,
                                                    const ModelParams& params) {
  const Grid& grid = rho_hat.grid();
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  const Jet r = make_jet(rho_hat);
  const Jet t = make_jet(theta_hat);
  const auto rt_hat = product_hat(r.v, t.v);
  const Jet rt = make_jet(rt_hat);

  SpectralField n_rho = laplacian(rt_hat);
  n_rho *= k1;

  const auto& prof = params.kappa3_var;
  RealField n_theta(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double one_plus_r = 1.0 + r.v[i];
    if (!(one_plus_r > 0.0)) throw InvariantViolation("density must stay positive", i, one_plus_r);
    const double ti = t.v[i];
    double gtp = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      gtp += t.grad[a][i] * (r.grad[a][i] + t.grad[a][i] + rt.grad[a][i]);
    }
    const double lap_p = r.lap[i] + t.lap[i] + rt.lap[i];
    const double gt2 = dot(t.grad, t.grad, i);
    const double linear = (k1 * k1 + params.kappa3_bar) * t.lap[i] + k1 * k1 * r.lap[i];
    const double nonlinear = k1 * (k1 + k2) * gtp + k1 * k1 * rt.lap[i] + k1 * k1 * ti * lap_p +
                             prof.value(ti) * t.lap[i] + prof.derivative(ti) * gt2;
    n_theta[i] = (nonlinear - r.v[i] * linear) / (k2 * one_plus_r);
  }
  return {std::move(n_rho), dealias(forward(n_theta))};
}

std::array<SpectralField, 2> nonlinear_fg_hat(const SpectralField& b_hat, const SpectralField& tau_hat,
                                              const ModelParams& params) {
  return fg_from_jets(make_jet(b_hat), make_jet(tau_hat), params);
}

}  // namespace detail

Tendencies rhs_tilde(const TildeState& state, const ModelParams& params) {
  require_same_grid(state.rho.grid(), state.theta.grid(), "rhs_tilde");
  const auto rho_hat = forward(state.rho);
  const auto theta_hat = forward(state.theta);
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  auto n = detail::tilde_nonlinearity_hat(rho_hat, theta_hat, params);

  const Grid& grid = rho_hat.grid();
  SpectralField d_rho(grid), d_theta(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k2i = grid.k_squared(i);
    d_rho[i] = -k1 * k2i * (rho_hat[i] + theta_hat[i]) + n[0][i];
    d_theta[i] = -k2i * (k1 * k1 * rho_hat[i] + (k1 * k1 + params.kappa3_bar) * theta_hat[i]) / k2 + n[1][i];
  }
  return {inverse(d_rho), inverse(d_theta)};
}

Tendencies rhs_a_form(const AState& state, const ModelParams& params) {
  require_same_grid(state.a.grid(), state.theta.grid(), "rhs_a_form");
  const auto a_hat = forward(state.a);
  const auto t_hat = forward(state.theta);
  const auto fg = detail::nonlinear_fg_hat(a_hat, t_hat, params);
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;

  const Grid& grid = a_hat.grid();
  SpectralField da(grid), dt(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k2i = grid.k_squared(i);
    da[i] = -k1 * k2i * a_hat[i] + k1 * k2i * t_hat[i] + fg[0][i];
    dt[i] = (-(k1 * k1 + params.kappa3_bar) * k2i * t_hat[i] + k1 * k1 * k2i * a_hat[i] + fg[1][i]) / k2;
  }
  return {inverse(da), inverse(dt)};
}

NonlinearFG nonlinear_fg(const RealField& b, const RealField& tau, const ModelParams& params) {
  require_same_grid(b.grid(), tau.grid(), "nonlinear_fg");
  const auto fg = detail::nonlinear_fg_hat(forward(b), forward(tau), params);
  return {inverse(fg[0]), inverse(fg[1])};
}

DifferenceFG difference_fg(const RealField& b1, const RealField& tau1, const RealField& b2,
                           const RealField& tau2, const ModelParams& params) {
  const Grid& grid = b1.grid();
  require_same_grid(grid, tau1.grid(), "difference_fg");
  require_same_grid(grid, b2.grid(), "difference_fg");
  require_same_grid(grid, tau2.grid(), "difference_fg");
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  const auto& prof = params.kappa3_var;

  const Jet B1 = make_jet(b1), T1 = make_jet(tau1), B2 = make_jet(b2), T2 = make_jet(tau2);
  const Jet dB = make_jet(b1 - b2), dT = make_jet(tau1 - tau2);

  RealField dF(grid), dG(grid), direct_F(grid), direct_G(grid);
  std::array<RealField, 8> J;
  for (auto& j : J) j = RealField(grid);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_floor_at(1.0 + B1.v[i], params.eps_a, i);
    check_floor_at(1.0 + B2.v[i], params.eps_a, i);
    const double b1i = B1.v[i], b2i = B2.v[i], t1i = T1.v[i], t2i = T2.v[i];
    const double db = dB.v[i], dt = dT.v[i];
    const double q1 = 1.0 / (1.0 + b1i), q2 = 1.0 / (1.0 + b2i);
    const double dq = q1 - q2;
    const double gb1_2 = dot(B1.grad, B1.grad, i), gb2_2 = dot(B2.grad, B2.grad, i);
    const double gdb_gb2 = dot(dB.grad, B2.grad, i), gb1_gdb = dot(B1.grad, dB.grad, i);
    const double gdb_gt2 = dot(dB.grad, T2.grad, i), gb1_gdt = dot(B1.grad, dT.grad, i);
    const double gb2_gt2 = dot(B2.grad, T2.grad, i);
    const double gt2_2 = dot(T2.grad, T2.grad, i);
    const double gdt_sum = dot(dT.grad, T1.grad, i) + dot(dT.grad, T2.grad, i);
    const double gdb_sum = gdb_gb2 + gb1_gdb;

    dF[i] = -2.0 * k1 * dq * gb2_2 * (t2i + 1.0) - 2.0 * k1 * q1 * gdb_gb2 * (t2i + 1.0) -
            2.0 * k1 * q1 * gb1_gdb * (t2i + 1.0) - 2.0 * k1 * q1 * gb1_2 * dt + 2.0 * k1 * gdb_gt2 +
            2.0 * k1 * gb1_gdt - k1 * db * T2.lap[i] - k1 * b1i * dT.lap[i] + k1 * dt * B2.lap[i] +
            k1 * t1i * dB.lap[i];

    const double tsum = t1i + t2i + 2.0;
    J[0][i] = dq * ((t2i + 1.0) * (t2i + 1.0) * (q2 + q1)) * gb2_2 + dt * tsum * q1 * q1 * gb2_2 +
              (t1i + 1.0) * (t1i + 1.0) * q1 * q1 * gdb_sum;
    J[1][i] = dq * (t2i + 1.0) * gb2_gt2 + dt * q1 * gb2_gt2 + (t1i + 1.0) * q1 * gdb_gt2 +
              (t1i + 1.0) * q1 * gb1_gdt;
    J[2][i] = dq * (t2i * t2i + 2.0 * t2i) * B2.lap[i] + dt * tsum * q1 * B2.lap[i] +
              (t1i * t1i + 2.0 * t1i) * q1 * dB.lap[i];
    J[3][i] = (b1i * q1 - b2i * q2) * B2.lap[i] + b1i * q1 * dB.lap[i];
    J[4][i] = db * T2.lap[i] + b1i * dT.lap[i];
    J[5][i] = dt * T2.lap[i] + t1i * dT.lap[i];
    J[6][i] = db * (prof.value(t2i) * T2.lap[i] + prof.derivative(t2i) * gt2_2) +
              (1.0 + b1i) * (prof.value(t1i) - prof.value(t2i)) * T2.lap[i] +
              (1.0 + b1i) * prof.value(t1i) * dT.lap[i] +
              (1.0 + b1i) * (prof.derivative(t1i) - prof.derivative(t2i)) * gt2_2 +
              (1.0 + b1i) * prof.derivative(t1i) * gdt_sum;
    J[7][i] = gdt_sum;

    dG[i] = 2.0 * k1 * k1 * J[0][i] - (3.0 * k1 * k1 + k1 * k2) * J[1][i] - k1 * k1 * J[2][i] +
            k1 * k1 * J[3][i] + params.kappa3_bar * J[4][i] + k1 * k1 * J[5][i] + J[6][i] +
            k1 * (k1 + k2) * J[7][i];

    const auto fg1 = point_fg(B1, T1, i, params);
    const auto fg2 = point_fg(B2, T2, i, params);
    direct_F[i] = fg1.F - fg2.F;
    direct_G[i] = fg1.G - fg2.G;
  }

  DifferenceFG out{finish(dF), finish(dG), {}, finish(direct_F), finish(direct_G)};
  for (std::size_t k = 0; k < J.size(); ++k) out.J[k] = finish(J[k]);
  return out;
}

}  // namespace thermogas
