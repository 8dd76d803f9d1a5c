#include "thermogas/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "thermogas/littlewood_paley.hpp"
#include "thermogas/norms.hpp"
#include "thermogas/spectral.hpp"
#include "thermogas/thermo.hpp"

namespace thermogas {

namespace {

constexpr double kGapThreshold = 1e-6;

Mat2 combine(double c0, double c1, const Mat2& X) {
  return {c0 + c1 * X[0], c1 * X[1], c1 * X[2], c0 + c1 * X[3]};
}

double phi1_scalar(double z) { return z == 0.0 ? 1.0 : std::expm1(z) / z; }

double phi2_scalar(double z) {
  if (std::abs(z) < 0.5) {
    // sum_n z^n / (n + 2)!
    double term = 0.5;
    double sum = term;
    for (int n = 1; n < 30; ++n) {
      term *= z / (n + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

using Mat6 = std::array<std::array<double, 6>, 6>;

Mat6 mul(const Mat6& a, const Mat6& b) {
  Mat6 c{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      if (a[i][k] == 0.0) continue;
      for (int j = 0; j < 6; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Mat6 expm(const Mat6& B) {
  double norm = 0.0;
  for (const auto& row : B) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const double scale = std::exp2(-squarings);
  Mat6 A{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) A[i][j] = B[i][j] * scale;

  Mat6 result{};
  Mat6 term{};
  for (int i = 0; i < 6; ++i) result[i][i] = term[i][i] = 1.0;
  for (int n = 1; n <= 30; ++n) {
    term = mul(term, A);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) term[i][j] /= n;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) result[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

std::size_t mode_key(const Grid& grid, std::size_t flat) {
  const auto m = grid.modes(flat);
  std::size_t key = 0;
  for (int a = 0; a < grid.dim(); ++a) key += static_cast<std::size_t>(m[a] * m[a]);
  return key;
}

SpectralPair zero_pair(const Grid& grid) { return {SpectralField(grid), SpectralField(grid)}; }

void axpy(SpectralPair& y, const SpectralPair& x, double s = 1.0) {
  for (std::size_t i = 0; i < y.first.size(); ++i) {
    y.first[i] += s * x.first[i];
    y.second[i] += s * x.second[i];
  }
}

// Physical checks after a step; returns the state in a-form variables.
AState to_checked_a_state(const SpectralPair& u, Formulation stepping, const ModelParams& params) {
  RealField first = inverse(u.first);
  RealField theta = inverse(u.second);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(first[i]) || !std::isfinite(theta[i])) {
      throw InvariantViolation("state became non-finite", i, first[i] + theta[i]);
    }
    if (!(1.0 + theta[i] > 0.0)) throw InvariantViolation("temperature must stay positive", i, 1.0 + theta[i]);
  }
  if (stepping == Formulation::a_form) {
    check_floor(first, params.eps_a);
    return {std::move(first), std::move(theta)};
  }
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double rho = 1.0 + first[i];
    if (!(rho > 0.0)) throw InvariantViolation("density must stay positive", i, rho);
    first[i] = -first[i] / rho;
  }
  return {std::move(first), std::move(theta)};
}

NormRecord measure_with(const DyadicFamily& family, const AState& s) {
  const auto a_hat = forward(s.a);
  const auto t_hat = forward(s.theta);
  const BesovSpec crit{1.5, 2.0, 1.0};
  NormRecord r{};
  r.h2_a = h_norm(a_hat, 2.0);
  r.h2_theta = h_norm(t_hat, 2.0);
  r.besov_a = besov_norm(family, a_hat, crit);
  r.besov_theta = besov_norm(family, t_hat, crit);
  r.linf_a = s.a.max_abs();
  r.linf_theta = s.theta.max_abs();
  double mass = 0.0;
  double min_rho = 1.0 / (1.0 + s.a[0]);
  double min_theta = 1.0 + s.theta[0];
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    const double rho = 1.0 / (1.0 + s.a[i]);
    mass += rho;
    min_rho = std::min(min_rho, rho);
    min_theta = std::min(min_theta, 1.0 + s.theta[i]);
  }
  r.mass = mass * s.a.grid().cell_volume();
  r.min_rho = min_rho;
  r.min_theta = min_theta;
  return r;
}

}  // namespace

Mat2 linear_symbol(const ModelParams& params, LinearForm form) {
  const double k1 = params.kappa1;
  const double k2 = params.kappa2;
  const double sign = form == LinearForm::a_form ? 1.0 : -1.0;
  return {-k1, sign * k1, sign * k1 * k1 / k2, -(k1 * k1 + params.kappa3_bar) / k2};
}

PhiFunctions phi_functions_augmented(const Mat2& X) {
  Mat6 B{};
  B[0][0] = X[0];
  B[0][1] = X[1];
  B[1][0] = X[2];
  B[1][1] = X[3];
  B[0][2] = B[1][3] = 1.0;
  B[2][4] = B[3][5] = 1.0;
  const Mat6 E = expm(B);
  PhiFunctions out{};
  out.phi0 = {E[0][0], E[0][1], E[1][0], E[1][1]};
  out.phi1 = {E[0][2], E[0][3], E[1][2], E[1][3]};
  out.phi2 = {E[0][4], E[0][5], E[1][4], E[1][5]};
  out.fallback = true;
  return out;
}

PhiFunctions phi_functions(const Mat2& X) {
  const double half_tr = 0.5 * (X[0] + X[3]);
  const double det = X[0] * X[3] - X[1] * X[2];
  const double disc = half_tr * half_tr - det;
  if (X == Mat2{0.0, 0.0, 0.0, 0.0}) {
    return {{1.0, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.0, 1.0}, {0.5, 0.0, 0.0, 0.5}, false};
  }
  if (!(disc > 0.0)) return phi_functions_augmented(X);
  const double sq = std::sqrt(disc);
  const double big = half_tr + std::copysign(sq, half_tr);
  const double small = big != 0.0 ? det / big : half_tr - std::copysign(sq, half_tr);
  const double scale = std::max(std::abs(big), std::abs(small));
  if (2.0 * sq < kGapThreshold * scale) return phi_functions_augmented(X);

  const double l1 = big;
  const double l2 = small;
  auto divided = [&](double f1, double f2) {
    const double c1 = (f1 - f2) / (l1 - l2);
    const double c0 = (l1 * f2 - l2 * f1) / (l1 - l2);
    return combine(c0, c1, X);
  };
  PhiFunctions out{};
  out.phi0 = divided(std::exp(l1), std::exp(l2));
  out.phi1 = divided(phi1_scalar(l1), phi1_scalar(l2));
  out.phi2 = divided(phi2_scalar(l1), phi2_scalar(l2));
  out.fallback = false;
  return out;
}

LinearPropagator::LinearPropagator(const Grid& grid, const ModelParams& params, double dt, LinearForm form)
    : grid_(grid), dt_(dt), form_(form), slot_(grid.size()) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive and finite");
  const Mat2 A = linear_symbol(params, form);
  const double unit2 = grid.wavenumber_unit() * grid.wavenumber_unit();
  std::map<std::size_t, std::size_t> seen;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t key = mode_key(grid, i);
    auto it = seen.find(key);
    if (it == seen.end()) {
      const double z = dt * unit2 * static_cast<double>(key);
      const Mat2 X{z * A[0], z * A[1], z * A[2], z * A[3]};
      const auto f = phi_functions(X);
      fallback_ = fallback_ || f.fallback;
      ModeMatrices m{};
      m.E = f.phi0;
      for (int e = 0; e < 4; ++e) {
        m.W[e] = dt * f.phi1[e];
        m.W2[e] = dt * f.phi2[e];
      }
      it = seen.emplace(key, modes_.size()).first;
      modes_.push_back(m);
    }
    slot_[i] = it->second;
  }
}

SpectralPair apply_matrices(const LinearPropagator& prop, const Mat2 ModeMatrices::*pick, const SpectralPair& u) {
  const Grid& grid = prop.grid();
  SpectralPair out = zero_pair(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Mat2& M = prop.mode(i).*pick;
    const Complex x = u.first[i];
    const Complex y = u.second[i];
    out.first[i] = M[0] * x + M[1] * y;
    out.second[i] = M[2] * x + M[3] * y;
  }
  return out;
}

namespace {

Formulation stepping_formulation(const StepOptions& o) {
  return o.formulation == Formulation::a_form ? Formulation::a_form : Formulation::tilde;
}

LinearForm linear_form_of(const StepOptions& o) {
  return stepping_formulation(o) == Formulation::a_form ? LinearForm::a_form : LinearForm::tilde;
}

}  // namespace

Stepper::Stepper(const Grid& grid, const ModelParams& params, double dt, Scheme scheme, StepOptions options)
    : params_(params), scheme_(scheme), options_(std::move(options)),
      prop_(grid, params, dt, linear_form_of(options_)) {
  params_.validate();
  params_.require_unit_equilibrium();
}

SpectralPair Stepper::nonlinearity(const SpectralPair& u, double t) const {
  SpectralPair n = zero_pair(prop_.grid());
  if (!options_.linear_only) {
    if (stepping_formulation(options_) == Formulation::a_form) {
      auto fg = detail::nonlinear_fg_hat(u.first, u.second, params_);
      fg[1] *= 1.0 / params_.kappa2;
      n = {std::move(fg[0]), std::move(fg[1])};
    } else {
      auto nt = detail::tilde_nonlinearity_hat(u.first, u.second, params_);
      n = {std::move(nt[0]), std::move(nt[1])};
    }
  }
  if (options_.source) axpy(n, options_.source(t));
  return n;
}

void Stepper::step(SpectralPair& u, double t) const {
  const SpectralPair n0 = nonlinearity(u, t);
  SpectralPair p = apply_matrices(prop_, &ModeMatrices::E, u);
  axpy(p, apply_matrices(prop_, &ModeMatrices::W, n0));
  if (scheme_ == Scheme::etd1) {
    u = std::move(p);
    return;
  }
  SpectralPair dn = nonlinearity(p, t + prop_.dt());
  axpy(dn, n0, -1.0);
  axpy(p, apply_matrices(prop_, &ModeMatrices::W2, dn));
  u = std::move(p);
}

AState step(const AState& state, const ModelParams& params, double dt, Scheme scheme) {
  require_same_grid(state.a.grid(), state.theta.grid(), "step");
  const Stepper stepper(state.a.grid(), params, dt, scheme);
  SpectralPair u{forward(state.a), forward(state.theta)};
  stepper.step(u, 0.0);
  return to_checked_a_state(u, Formulation::a_form, params);
}

double default_dt(const Grid& grid, const ModelParams& params) {
  const double kmax = std::max(params.kappa1, (params.kappa1 * params.kappa1 + params.kappa3_bar) / params.kappa2);
  const double k2max = grid.max_wavenumber() * grid.max_wavenumber();
  return 0.5 / (kmax * k2max);
}

NormRecord measure(const AState& state, const ModelParams& params) {
  (void)params;
  return measure_with(DyadicFamily(state.a.grid()), state);
}

Trajectory simulate(const AState& initial, const ModelParams& params, const SimulateOptions& options) {
  params.validate();
  params.require_unit_equilibrium();
  const Grid& grid = initial.a.grid();
  require_same_grid(grid, initial.theta.grid(), "simulate");
  if (!(options.T > 0.0) || !std::isfinite(options.T)) throw std::invalid_argument("T must be positive");
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw std::invalid_argument("dt must be positive");
  if (options.snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
  const long long steps = std::llround(options.T / options.dt);
  if (steps < 1 || std::abs(static_cast<double>(steps) * options.dt - options.T) > 1e-9 * options.T) {
    throw std::invalid_argument("dt must divide T");
  }
  if (steps % options.snapshot_stride != 0) {
    throw std::invalid_argument("snapshot_stride must divide the number of steps");
  }

  const Formulation stepping = stepping_formulation(options.step);
  const Stepper stepper(grid, params, options.dt, options.scheme, options.step);
  const DyadicFamily family(grid);

  Trajectory traj;
  traj.grid = grid;
  auto record = [&](double t, AState s) {
    traj.times.push_back(t);
    if (options.record_norms) traj.norms.push_back(measure_with(family, s));
    traj.states.push_back(std::move(s));
  };

  SpectralPair u;
  try {
    check_floor(initial.a, params.eps_a);
    if (stepping == Formulation::a_form) {
      u = {forward(initial.a), forward(initial.theta)};
    } else {
      const auto tilde = to_tilde(to_primitive(initial, params), params);
      u = {forward(tilde.rho), forward(tilde.theta)};
    }
  } catch (const InvariantViolation& e) {
    traj.breached = true;
    traj.breach_message = e.what();
    return traj;
  }
  record(0.0, initial);

  for (long long n = 1; n <= steps; ++n) {
    const double t_prev = static_cast<double>(n - 1) * options.dt;
    try {
      stepper.step(u, t_prev);
      if (n % options.snapshot_stride == 0) {
        record(static_cast<double>(n) * options.dt, to_checked_a_state(u, stepping, params));
      } else {
        (void)to_checked_a_state(u, stepping, params);
      }
    } catch (const InvariantViolation& e) {
      traj.breached = true;
      traj.breach_message = std::string(e.what()) + " after step " + std::to_string(n);
      break;
    }
  }
  return traj;
}

std::array<double, 3> derivative_weights(const std::vector<double>& times, std::size_t i,
                                         std::array<std::size_t, 3>& points) {
  const std::size_t n = times.size();
  if (n < 3) throw std::invalid_argument("time derivative needs at least 3 snapshots");
  const std::size_t start = i == 0 ? 0 : (i + 1 >= n ? n - 3 : i - 1);
  points = {start, start + 1, start + 2};
  const double t = times[i];
  std::array<double, 3> w{};
  for (int j = 0; j < 3; ++j) {
    const double tj = times[points[j]];
    double denom = 1.0;
    for (int m = 0; m < 3; ++m)
      if (m != j) denom *= tj - times[points[m]];
    double numer = 0.0;
    for (int m = 0; m < 3; ++m) {
      if (m == j) continue;
      double prod = 1.0;
      for (int l = 0; l < 3; ++l)
        if (l != j && l != m) prod *= t - times[points[l]];
      numer += prod;
    }
    w[j] = numer / denom;
  }
  return w;
}

std::vector<double> pde_residual(const Trajectory& traj, const ModelParams& params, Formulation formulation,
                                 const SourceFn& source) {
  const std::size_t n = traj.states.size();
  if (n < 3 || traj.times.size() != n) throw std::invalid_argument("pde_residual needs at least 3 snapshots");

  auto unknowns = [&](const AState& s) -> std::pair<RealField, RealField> {
    switch (formulation) {
      case Formulation::a_form:
        return {s.a, s.theta};
      case Formulation::tilde: {
        auto t = to_tilde(to_primitive(s, params), params);
        return {std::move(t.rho), std::move(t.theta)};
      }
      case Formulation::primitive: {
        auto p = to_primitive(s, params);
        return {std::move(p.rho), std::move(p.theta)};
      }
    }
    throw std::invalid_argument("unknown formulation");
  };
  auto rhs = [&](const AState& s) -> Tendencies {
    switch (formulation) {
      case Formulation::a_form:
        return rhs_a_form(s, params);
      case Formulation::tilde:
        return rhs_tilde(to_tilde(to_primitive(s, params), params), params);
      case Formulation::primitive:
        return rhs_primitive(to_primitive(s, params), params);
    }
    throw std::invalid_argument("unknown formulation");
  };

  std::vector<std::pair<RealField, RealField>> u;
  u.reserve(n);
  for (const auto& s : traj.states) u.push_back(unknowns(s));

  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    std::array<std::size_t, 3> pts{};
    const auto w = derivative_weights(traj.times, i, pts);
    Tendencies r = rhs(traj.states[i]);
    RealField r1 = -1.0 * r.first;
    RealField r2 = -1.0 * r.second;
    for (int j = 0; j < 3; ++j) {
      r1 += w[j] * u[pts[j]].first;
      r2 += w[j] * u[pts[j]].second;
    }
    if (source) {
      const auto s = source(traj.times[i]);
      r1 -= inverse(s.first);
      r2 -= inverse(s.second);
    }
    const double e1 = lp_norm(r1, 2.0);
    const double e2 = lp_norm(r2, 2.0);
    out.push_back(std::sqrt(e1 * e1 + e2 * e2));
  }
  return out;
}

}  // namespace thermogas
