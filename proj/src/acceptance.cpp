#include "thermogas/acceptance.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "thermogas/diagnostics.hpp"
#include "thermogas/fixed_point.hpp"
#include "thermogas/initial.hpp"
#include "thermogas/integrator.hpp"
#include "thermogas/littlewood_paley.hpp"
#include "thermogas/norms.hpp"
#include "thermogas/reports.hpp"
#include "thermogas/spectral.hpp"
#include "thermogas/thermo.hpp"

namespace thermogas {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// Joins measured items into one detail string.
class Detail {
 public:
  Detail& add(const std::string& key, const std::string& value) {
    if (!text_.empty()) text_ += "; ";
    text_ += key + "=" + value;
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

double l2(const RealField& f) { return lp_norm(f, 2.0); }

RealField scaled_to_max(RealField f, double amplitude) {
  f *= amplitude / f.max_abs();
  return f;
}

double pair_l2(const AState& x, const AState& y) {
  const double da = l2(x.a - y.a);
  const double dt = l2(x.theta - y.theta);
  return std::sqrt(da * da + dt * dt);
}

// ||(rho~, theta~)||_{H^2} of an a-form state.
double tilde_h2(const AState& s) {
  RealField rho(s.a.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = 1.0 / (1.0 + s.a[i]) - 1.0;
  const double nr = h_norm(rho, 2.0);
  const double nt = h_norm(s.theta, 2.0);
  return std::sqrt(nr * nr + nt * nt);
}

// ---- 1: closure -------------------------------------------------------------

CriterionResult closure(const AcceptanceOptions&) {
  double worst_e = 0.0;
  double worst_p = 0.0;
  double worst_eta_theta = 0.0;
  double worst_helmholtz = 0.0;
  for (int ik = 0; ik < 10; ++ik) {
    ModelParams p;
    p.kappa1 = 0.1 * std::pow(100.0, ik / 9.0);
    p.kappa2 = 0.5 + 2.0 * p.kappa1;
    for (int ir = 0; ir < 10; ++ir) {
      const double rho = 0.05 * std::pow(400.0, ir / 9.0);
      for (int it = 0; it < 10; ++it) {
        const double theta = 0.05 * std::pow(400.0, it / 9.0);
        const auto s = state_functions(rho, theta, p);
        const double e_ref = p.kappa2 * rho * theta;
        const double p_ref = p.kappa1 * rho * theta;
        worst_e = std::max(worst_e, std::abs(s.e - e_ref) / e_ref);
        worst_p = std::max(worst_p, std::abs(s.p - p_ref) / p_ref);

        const double h = 3e-5 * theta;
        const auto up = state_functions(rho, theta + h, p);
        const auto dn = state_functions(rho, theta - h, p);
        const double eta_fd = (up.eta - dn.eta) / (2.0 * h);
        const double eta_theta_ref = p.kappa2 * rho / theta;
        worst_eta_theta = std::max({worst_eta_theta, std::abs(eta_fd - eta_theta_ref) / eta_theta_ref,
                                    std::abs(s.eta_theta - eta_theta_ref) / eta_theta_ref});
        const double psi_fd = (up.psi - dn.psi) / (2.0 * h);
        worst_helmholtz =
            std::max(worst_helmholtz, std::abs(-psi_fd - s.eta) / std::max(std::abs(s.eta), p.kappa2 * rho));
      }
    }
  }
  CriterionResult r;
  r.pass = worst_e <= 1e-12 && worst_p <= 1e-12 && worst_eta_theta <= 1e-8 && worst_helmholtz <= 1e-8;
  r.detail = Detail()
                 .add("e_rel", sci(worst_e))
                 .add("p_rel", sci(worst_p))
                 .add("eta_theta_fd_rel", sci(worst_eta_theta))
                 .add("eta_vs_dpsi_rel", sci(worst_helmholtz))
                 .str();
  return r;
}

// ---- 2: entropy production --------------------------------------------------

CriterionResult entropy_production(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 100; ++s) {
    const int band = 1 + s % 10;
    const double amplitude = 0.9 * (s + 1) / 100.0;
    PrimitiveState state{scaled_to_max(random_band_field(grid, o.seed, 2 * s, band), amplitude),
                         scaled_to_max(random_band_field(grid, o.seed, 2 * s + 1, band), amplitude)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      state.rho[i] += 1.0;
      state.theta[i] += 1.0;
    }
    worst = std::min(worst, darcy_and_production(state, o.params).production.min());
  }
  CriterionResult r;
  r.pass = worst >= -1e-14;
  r.detail = Detail().add("states", "100").add("min_production", sci(worst)).str();
  return r;
}

// ---- 3: formulation consistency ---------------------------------------------

CriterionResult formulation_consistency(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 64, kTwoPi);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const AState a = random_band_state(grid, o.seed + 1000 + s, 3, 1e-2, Normalization::linf,
                                       DataVariables::a_form, o.params);
    const PrimitiveState prim = to_primitive(a, o.params);
    const auto rp = rhs_primitive(prim, o.params);
    const auto ra = rhs_a_form(a, o.params);
    RealField a_t(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) a_t[i] = -rp.first[i] / (prim.rho[i] * prim.rho[i]);
    worst = std::max({worst, l2(a_t - ra.first) / l2(ra.first), l2(rp.second - ra.second) / l2(ra.second)});
  }
  CriterionResult r;
  r.pass = worst <= 1e-6;
  r.detail = Detail().add("states", "50").add("max_rel_l2", sci(worst)).str();
  return r;
}

// ---- 4: difference identities -----------------------------------------------

CriterionResult difference_identities(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  double worst_f = 0.0;
  double worst_g = 0.0;
  for (int s = 0; s < 50; ++s) {
    const int band = 1 + s % 10;
    auto draw = [&](int k) { return scaled_to_max(random_band_field(grid, o.seed, 4 * s + k, band), 0.3); };
    const auto d = difference_fg(draw(0), draw(1), draw(2), draw(3), o.params);
    worst_f = std::max(worst_f, (d.dF - d.direct_dF).max_abs() / d.direct_dF.max_abs());
    worst_g = std::max(worst_g, (d.dG - d.direct_dG).max_abs() / d.direct_dG.max_abs());
  }
  CriterionResult r;
  r.pass = worst_f <= 1e-9 && worst_g <= 1e-9;
  r.detail = Detail().add("pairs", "50").add("dF_rel", sci(worst_f)).add("dG_rel", sci(worst_g)).str();
  return r;
}

// ---- 5: mass ----------------------------------------------------------------

CriterionResult mass_conservation(const AcceptanceOptions& o) {
  CriterionResult r;
  r.pass = true;
  Detail detail;
  for (int n : {32, 64}) {
    const Grid grid = make_grid(2, n, kTwoPi);
    const AState data =
        random_band_state(grid, o.seed, 4, 0.1, Normalization::linf, DataVariables::tilde, o.params);
    SimulateOptions opt;
    opt.T = 1.0;
    opt.dt = 1.0 / 250.0;
    opt.snapshot_stride = 25;
    opt.step.formulation = Formulation::tilde;
    const auto traj = simulate(data, o.params, opt);
    double drift = 0.0;
    for (const auto& rec : traj.norms) drift = std::max(drift, std::abs(rec.mass - traj.norms[0].mass) / traj.norms[0].mass);
    const bool ok = !traj.breached && std::abs(traj.times.back() - 1.0) < 1e-9 && drift <= 1e-12;
    r.pass = r.pass && ok;
    detail.add("n" + std::to_string(n) + "_drift", sci(drift));
    if (traj.breached) detail.add("n" + std::to_string(n) + "_breach", traj.breach_message);
  }
  r.detail = detail.str();
  return r;
}

// ---- 6: propagator ----------------------------------------------------------

using LMat6 = std::array<std::array<long double, 6>, 6>;

LMat6 lmul(const LMat6& a, const LMat6& b) {
  LMat6 c{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k)
      for (int j = 0; j < 6; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// exp of [[X, I, 0], [0, 0, I], [0, 0, 0]] by a 40-term Taylor series in long
// double after scaling to norm <= 1/8; the top row of blocks holds e^X,
// phi1(X) and phi2(X).
std::array<std::array<long double, 4>, 3> series_phi(const Mat2& X) {
  LMat6 B{};
  B[0][0] = X[0];
  B[0][1] = X[1];
  B[1][0] = X[2];
  B[1][1] = X[3];
  B[0][2] = B[1][3] = B[2][4] = B[3][5] = 1.0L;
  long double norm = 0.0L;
  for (const auto& row : B) {
    long double s = 0.0L;
    for (long double v : row) s += std::fabs(v);
    norm = std::max(norm, s);
  }
  int squarings = 0;
  while (norm > 0.125L) {
    norm /= 2.0L;
    ++squarings;
  }
  for (auto& row : B)
    for (auto& v : row) v = std::ldexp(v, -squarings);
  LMat6 sum{};
  LMat6 term{};
  for (int i = 0; i < 6; ++i) sum[i][i] = term[i][i] = 1.0L;
  for (int k = 1; k <= 40; ++k) {
    term = lmul(term, B);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        term[i][j] /= k;
        sum[i][j] += term[i][j];
      }
  }
  for (int s = 0; s < squarings; ++s) sum = lmul(sum, sum);
  std::array<std::array<long double, 4>, 3> out{};
  for (int f = 0; f < 3; ++f)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[f][2 * i + j] = sum[i][j + 2 * f];
  return out;
}

// max-entry error of `got` against `ref`, relative to the largest entry of ref.
double matrix_rel(const Mat2& got, const std::array<long double, 4>& ref, long double scale) {
  long double mx = 0.0L;
  long double diff = 0.0L;
  for (int i = 0; i < 4; ++i) {
    mx = std::max(mx, std::fabs(ref[i] * scale));
    diff = std::max(diff, std::fabs(ref[i] * scale - got[i]));
  }
  return static_cast<double>(diff / mx);
}

CriterionResult propagator(const AcceptanceOptions& o) {
  const Grid grid3 = make_grid(3, 16, kTwoPi);
  double worst_series = 0.0;
  int compared = 0;
  for (int draw = 0; draw < 20; ++draw) {
    ModelParams p;
    p.kappa1 = 0.2 + 2.8 * std::abs(uniform_signed(o.seed, 3 * draw));
    p.kappa2 = 0.2 + 2.8 * std::abs(uniform_signed(o.seed, 3 * draw + 1));
    p.kappa3_bar = 0.1 + 2.9 * std::abs(uniform_signed(o.seed, 3 * draw + 2));
    for (LinearForm form : {LinearForm::a_form, LinearForm::tilde}) {
      const Mat2 A = linear_symbol(p, form);
      for (double dt : {1e-3, 1e-2, 1e-1}) {
        const LinearPropagator prop(grid3, p, dt, form);
        std::set<double> seen;
        for (std::size_t i = 0; i < grid3.size(); ++i) {
          const double k2 = grid3.k_squared(i);
          if (k2 > 64.0 || !seen.insert(k2).second) continue;
          const Mat2 X{dt * k2 * A[0], dt * k2 * A[1], dt * k2 * A[2], dt * k2 * A[3]};
          const auto ref = series_phi(X);
          const auto& m = prop.mode(i);
          worst_series = std::max({worst_series, matrix_rel(m.E, ref[0], 1.0L), matrix_rel(m.W, ref[1], dt),
                                   matrix_rel(m.W2, ref[2], dt)});
          ++compared;
        }
      }
    }
  }

  const Grid grid2 = make_grid(2, 32, kTwoPi);
  const double sweep[] = {0.1, 0.3, 1.0, 3.0, 10.0};
  bool signs_ok = true;
  double worst_det = 0.0;
  for (double k1 : sweep)
    for (double k2 : sweep)
      for (double k3 : sweep) {
        ModelParams p;
        p.kappa1 = k1;
        p.kappa2 = k2;
        p.kappa3_bar = k3;
        for (LinearForm form : {LinearForm::a_form, LinearForm::tilde}) {
          const Mat2 A = linear_symbol(p, form);
          for (std::size_t i = 1; i < grid2.size(); ++i) {
            const double q = grid2.k_squared(i);
            const double tr = q * (A[0] + A[3]);
            const double det = q * q * (A[0] * A[3] - A[1] * A[2]);
            const double expected = k1 * k3 * q * q / k2;
            signs_ok = signs_ok && tr < 0.0 && det > 0.0;
            worst_det = std::max(worst_det, std::abs(det - expected) / expected);
          }
        }
      }

  CriterionResult r;
  r.pass = worst_series <= 1e-12 && signs_ok && worst_det <= 1e-12;
  r.detail = Detail()
                 .add("series_rel", sci(worst_series))
                 .add("matrices", std::to_string(compared))
                 .add("trace_neg_det_pos", signs_ok ? "yes" : "no")
                 .add("det_rel", sci(worst_det))
                 .str();
  return r;
}

// ---- 7: integrator order ----------------------------------------------------

AState final_state(const AState& data, const ModelParams& params, double T, double dt) {
  SimulateOptions opt;
  opt.T = T;
  opt.dt = dt;
  opt.snapshot_stride = static_cast<int>(std::lround(T / dt));
  opt.record_norms = false;
  auto traj = simulate(data, params, opt);
  if (traj.breached) throw std::runtime_error("run breached: " + traj.breach_message);
  return traj.states.back();
}

CriterionResult integrator_order(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  const AState data =
      random_band_state(grid, o.seed, 3, 0.1, Normalization::linf, DataVariables::a_form, o.params);
  const double T = 0.5;
  const double dts[] = {0.025, 0.0125, 0.00625};
  const AState ref = final_state(data, o.params, T, dts[2] / 16.0);
  std::vector<double> errors;
  for (double dt : dts) errors.push_back(pair_l2(final_state(data, o.params, T, dt), ref));

  CriterionResult r;
  r.pass = true;
  Detail detail;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    r.pass = r.pass && std::abs(ratio - 4.0) <= 0.5;
    detail.add("self_ratio" + std::to_string(i + 1), fixed3(ratio));
  }

  // Manufactured solution (eps sin x1, eps cos x1) e^{-t} with the matching source.
  const double eps = 1e-2;
  auto exact = [&](double t) {
    return AState{single_mode_field(grid, {1, 0, 0}, eps * std::exp(-t), true),
                  single_mode_field(grid, {1, 0, 0}, eps * std::exp(-t), false)};
  };
  const ModelParams params = o.params;
  SourceFn source = [&exact, params](double t) {
    const AState u = exact(t);
    const auto rhs = rhs_a_form(u, params);
    return SpectralPair{forward(-1.0 * u.a - rhs.first), forward(-1.0 * u.theta - rhs.second)};
  };
  const double mms_dts[] = {0.04, 0.02, 0.01, 0.005};
  std::vector<double> residuals;
  for (double dt : mms_dts) {
    SimulateOptions opt;
    opt.T = 0.4;
    opt.dt = dt;
    opt.record_norms = false;
    opt.step.source = source;
    const auto traj = simulate(exact(0.0), o.params, opt);
    const auto res = pde_residual(traj, o.params, Formulation::a_form, source);
    residuals.push_back(*std::max_element(res.begin(), res.end()));
  }
  // C is fixed from the coarsest step with a 1.5 safety factor.
  const double C = 1.5 * residuals[0] / (mms_dts[0] * mms_dts[0]);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    r.pass = r.pass && residuals[i] <= C * mms_dts[i] * mms_dts[i];
  }
  detail.add("mms_C", sci(C)).add("mms_residual_finest", sci(residuals.back()));
  detail.add("mms_ratio_last", fixed3(residuals[residuals.size() - 2] / residuals.back()));
  r.detail = detail.str();
  return r;
}

// ---- 8: small-data decay ----------------------------------------------------

CriterionResult small_data_decay(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  const AState data =
      random_band_state(grid, o.seed, 4, 1e-2, Normalization::h2, DataVariables::tilde, o.params);
  SimulateOptions opt;
  opt.T = 5.0;
  opt.dt = 0.01;
  opt.snapshot_stride = 5;
  opt.step.formulation = Formulation::tilde;
  opt.record_norms = false;
  const auto traj = simulate(data, o.params, opt);
  CriterionResult r;
  if (traj.breached) {
    r.detail = "run breached: " + traj.breach_message;
    return r;
  }
  const auto X = energy_functional_X(traj, o.params);
  std::size_t at1 = 0;
  while (traj.times[at1] < 1.0 - 1e-12) ++at1;
  const double h0 = tilde_h2(traj.states.front());
  const double h1 = tilde_h2(traj.states[at1]);
  const double plateau = X[at1];
  double x_max = 0.0;
  bool monotone = true;
  for (std::size_t i = 0; i < X.size(); ++i) {
    x_max = std::max(x_max, X[i]);
    if (i > 0 && X[i] < X[i - 1]) monotone = false;
  }
  const double growth = x_max / plateau;
  r.pass = h1 < h0 && std::isfinite(x_max) && growth <= 1.05 && monotone;
  r.detail = Detail()
                 .add("h2_t0", sci(h0))
                 .add("h2_t1", sci(h1))
                 .add("X_t1", sci(plateau))
                 .add("X_max_over_X_t1", fixed3(growth))
                 .add("X_monotone", monotone ? "yes" : "no")
                 .str();
  return r;
}

// ---- 9: Littlewood-Paley ----------------------------------------------------

CriterionResult littlewood_paley(const AcceptanceOptions& o) {
  struct Case {
    int d;
    int n;
    double L;
  };
  const Case cases[] = {{1, 128, kTwoPi}, {2, 64, kTwoPi}, {2, 32, 3.0}, {3, 16, kTwoPi}};
  double partition = 0.0;
  double ortho_lo = std::numeric_limits<double>::infinity();
  double ortho_hi = 0.0;
  double bern_lo = std::numeric_limits<double>::infinity();
  double bern_hi = 0.0;
  bool equivalence_ok = true;
  std::uint64_t stream = 0;
  for (const auto& c : cases) {
    const Grid grid = make_grid(c.d, c.n, c.L);
    const DyadicFamily family(grid);
    partition = std::max(partition, family.partition_residual());
    const EquivalenceBounds b0 = besov_sobolev_bounds(family, 0.0);
    const EquivalenceBounds b32 = besov_sobolev_bounds(family, 1.5);
    for (int s = 0; s < 5; ++s) {
      RealField u = random_band_field(grid, o.seed, stream++, c.n / 3);
      const double mean_free = l2(u);
      double blocks = 0.0;
      for (int j = family.j_min(); j <= family.j_max(); ++j) {
        const double bj = l2(dyadic_block(family, u, j, BlockKind::delta));
        blocks += bj * bj;
        for (double p : {2.0, kInfinity}) {
          if (auto ratio = bernstein_check(family, u, j, p)) {
            bern_lo = std::min(bern_lo, *ratio);
            bern_hi = std::max(bern_hi, *ratio);
          }
        }
      }
      const double ratio = blocks / (mean_free * mean_free);
      ortho_lo = std::min(ortho_lo, ratio);
      ortho_hi = std::max(ortho_hi, ratio);

      const double slack = 1e-12;
      const double r0 = besov_norm(family, u, {0.0, 2.0, 2.0}) / hdot_norm(u, 0.0);
      const double r32 = besov_norm(family, u, {1.5, 2.0, 2.0}) / hdot_norm(u, 1.5);
      equivalence_ok = equivalence_ok && r0 >= b0.c1 * (1 - slack) && r0 <= b0.c2 * (1 + slack) &&
                       r32 >= b32.c1 * (1 - slack) && r32 <= b32.c2 * (1 + slack);
    }
  }
  CriterionResult r;
  r.pass = partition <= 1e-12 && ortho_lo >= 0.5 * (1 - 1e-12) && ortho_hi <= 1.0 + 1e-12 && bern_lo >= 0.25 &&
           bern_hi <= 4.0 && equivalence_ok;
  r.detail = Detail()
                 .add("partition_residual", sci(partition))
                 .add("orthogonality_range", "[" + fixed3(ortho_lo) + "," + fixed3(ortho_hi) + "]")
                 .add("bernstein_range", "[" + fixed3(bern_lo) + "," + fixed3(bern_hi) + "]")
                 .add("equivalence_within_bounds", equivalence_ok ? "yes" : "no")
                 .str();
  return r;
}

// ---- 10: fixed point --------------------------------------------------------

PicardOptions acceptance_picard() {
  PicardOptions opt;
  opt.T = 0.5;
  opt.dt = 0.005;
  opt.tol = 1e-14;
  opt.max_iter = 30;
  opt.c_radius = 0.05;
  opt.M_const = 1.0;
  return opt;
}

CriterionResult fixed_point(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  const PicardOptions opt = acceptance_picard();
  const double sizes[] = {1e-4, 1e-3, 1e-2};
  std::vector<double> first_ratio;
  CriterionResult r;
  Detail detail;
  bool main_ok = false;
  for (double size : sizes) {
    const AState data =
        random_band_state(grid, o.seed, 3, size, Normalization::besov, DataVariables::a_form, o.params);
    PicardOptions run = opt;
    run.cross_validate = size == 1e-3;
    const auto result = picard_iterate(data.a, data.theta, o.params, run);
    const auto& rep = result.report;
    first_ratio.push_back(rep.contraction_ratios.empty() ? std::nan("") : rep.contraction_ratios.front());
    if (size == 1e-3) {
      const bool ratios_below_one = std::all_of(rep.contraction_ratios.begin(), rep.contraction_ratios.end(),
                                                [](double x) { return x < 1.0; });
      const double e = rep.smallness.solution_norm.value_or(std::nan(""));
      main_ok = rep.converged && ratios_below_one && !rep.contraction_ratios.empty() &&
                rep.direct_l2_distance <= 1e-6 && e <= opt.c_radius;
      detail.add("status", to_string(rep.status))
          .add("iterations", std::to_string(rep.differences.size()))
          .add("max_ratio", sci(*std::max_element(rep.contraction_ratios.begin(), rep.contraction_ratios.end())))
          .add("l2_to_direct", sci(rep.direct_l2_distance))
          .add("E_norm", sci(e))
          .add("c", sci(opt.c_radius));
    }
  }
  bool scaling_ok = true;
  for (std::size_t i = 0; i + 1 < first_ratio.size(); ++i) {
    const double factor = first_ratio[i + 1] / first_ratio[i];
    scaling_ok = scaling_ok && factor >= 5.0 && factor <= 15.0;
    detail.add("ratio_factor" + std::to_string(i + 1), fixed3(factor));
  }
  r.pass = main_ok && scaling_ok;
  r.detail = detail.str();
  return r;
}

// ---- 11: scaling ------------------------------------------------------------

CriterionResult scaling(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 64, kTwoPi);
  const AState data =
      random_band_state(grid, o.seed, 2, 1e-2, Normalization::linf, DataVariables::a_form, o.params);
  const auto res = scaling_test(data, o.params, 2, 0.25, 0.01);
  // The scale-invariant index is d/2: 1 on this grid, 3/2 on a three-dimensional one.
  const double ca = critical_norm_ratio(data.a, 2, 1.0);
  const double ct = critical_norm_ratio(data.theta, 2, 1.0);
  const Grid grid3 = make_grid(3, 32, kTwoPi);
  const double c3 = critical_norm_ratio(random_band_field(grid3, o.seed, 0, 3), 2, 1.5);
  CriterionResult r;
  r.pass = res.discrepancy <= 1e-6 && std::abs(ca - 1.0) <= 0.15 && std::abs(ct - 1.0) <= 0.15 &&
           std::abs(c3 - 1.0) <= 0.15;
  r.detail = Detail()
                 .add("discrepancy", sci(res.discrepancy))
                 .add("critical_ratio_a_d2", fixed3(ca))
                 .add("critical_ratio_theta_d2", fixed3(ct))
                 .add("critical_ratio_d3", fixed3(c3))
                 .str();
  return r;
}

// ---- 12: L^2 identities -----------------------------------------------------

CriterionResult l2_identities(const AcceptanceOptions& o) {
  const Grid grid = make_grid(2, 32, kTwoPi);
  const AState data =
      random_band_state(grid, o.seed, 1, 0.05, Normalization::linf, DataVariables::tilde, o.params);
  std::vector<std::array<double, 2>> worst;
  for (double dt : {0.004, 0.002, 0.001}) {
    SimulateOptions opt;
    opt.T = 0.4;
    opt.dt = dt;
    opt.step.formulation = Formulation::tilde;
    opt.record_norms = false;
    const auto traj = simulate(data, o.params, opt);
    if (traj.breached) throw std::runtime_error("run breached: " + traj.breach_message);
    std::array<double, 2> w{0.0, 0.0};
    for (const auto& t : l2_energy_identity(traj, o.params)) {
      w[0] = std::max(w[0], t.residual1);
      w[1] = std::max(w[1], t.residual2);
    }
    worst.push_back(w);
  }
  CriterionResult r;
  r.pass = true;
  Detail detail;
  for (std::size_t i = 0; i + 1 < worst.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      const double ratio = worst[i][k] / worst[i + 1][k];
      r.pass = r.pass && std::abs(ratio - 4.0) <= 1.0;
      detail.add("identity" + std::to_string(k + 1) + "_ratio" + std::to_string(i + 1), fixed3(ratio));
    }
  }
  detail.add("residual1_finest", sci(worst.back()[0])).add("residual2_finest", sci(worst.back()[1]));
  r.detail = detail.str();
  return r;
}

// ---- 13: determinism --------------------------------------------------------

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

CriterionResult determinism(const AcceptanceOptions& o) {
  const auto first = determinism_bundle(o);
  const auto second = determinism_bundle(o);
  std::uint64_t hash = 1469598103934665603ULL;
  std::size_t bytes = 0;
  for (const auto& [name, text] : first) {
    hash = fnv1a(name, hash);
    hash = fnv1a(text, hash);
    bytes += text.size();
  }
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  CriterionResult r;
  r.pass = first == second && bytes > 0;
  r.detail = Detail()
                 .add("files", std::to_string(first.size()))
                 .add("bytes", std::to_string(bytes))
                 .add("fnv1a", hex)
                 .add("identical", first == second ? "yes" : "no")
                 .str();
  return r;
}

using CriterionFn = CriterionResult (*)(const AcceptanceOptions&);

struct Entry {
  const char* name;
  CriterionFn fn;
};

const Entry kEntries[kCriterionCount] = {
    {"thermodynamic closure", closure},
    {"entropy production non-negativity", entropy_production},
    {"formulation cross-consistency", formulation_consistency},
    {"difference-formula identities", difference_identities},
    {"mass conservation", mass_conservation},
    {"linear propagator", propagator},
    {"integrator order", integrator_order},
    {"small-data decay", small_data_decay},
    {"Littlewood-Paley blocks", littlewood_paley},
    {"fixed-point construction", fixed_point},
    {"scaling invariance", scaling},
    {"L2 energy identities", l2_identities},
    {"determinism", determinism},
};

}  // namespace

ModelParams default_acceptance_params() {
  ModelParams p;
  p.kappa1 = 1.0;
  p.kappa2 = 1.5;
  p.kappa3_bar = 0.8;
  p.kappa3_var = {ConductivityProfile::Kind::tanh, 0.2};
  p.eps_a = 0.1;
  return p;
}

std::string criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id must be in 1..13");
  return kEntries[id - 1].name;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  CriterionResult r;
  const std::string name = criterion_name(id);
  try {
    options.params.validate();
    options.params.require_unit_equilibrium();
    r = kEntries[id - 1].fn(options);
  } catch (const std::exception& e) {
    r = {};
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.name = name;
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::vector<int> ids) {
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  for (int id : ids) criterion_name(id);
  std::vector<CriterionResult> results(ids.size());
  const int workers = std::clamp(options.threads, 1, static_cast<int>(ids.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < ids.size(); k = next++) results[k] = run_criterion(ids[k], options);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return results;
}

std::string format_result(const CriterionResult& r) {
  char head[16];
  std::snprintf(head, sizeof head, "%2d", r.id);
  return std::string(r.pass ? "PASS " : "FAIL ") + head + " " + r.name + ": " + r.detail;
}

void write_verify_csv(std::ostream& out, const std::vector<CriterionResult>& results) {
  out << "criterion,name,result,detail\n";
  for (const auto& r : results) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), '"', '\'');
    out << r.id << ',' << r.name << ',' << (r.pass ? "PASS" : "FAIL") << ",\"" << detail << "\"\n";
  }
}

std::map<std::string, std::string> determinism_bundle(const AcceptanceOptions& o) {
  std::map<std::string, std::string> files;
  const Grid grid = make_grid(2, 16, kTwoPi);
  const AState data =
      random_band_state(grid, o.seed, 2, 0.05, Normalization::linf, DataVariables::a_form, o.params);

  SimulateOptions sim;
  sim.T = 0.2;
  sim.dt = 0.01;
  sim.snapshot_stride = 2;
  const auto traj = simulate(data, o.params, sim);
  std::ostringstream t, e;
  write_trajectory_csv(t, traj);
  write_energy_csv(e, energy_report(traj, o.params));
  files["trajectory.csv"] = t.str();
  files["energy_report.csv"] = e.str();

  PicardOptions pic;
  pic.T = 0.1;
  pic.dt = 0.01;
  const auto fp = picard_iterate(data.a, data.theta, o.params, pic);
  std::ostringstream f, fs;
  write_fixedpoint_csv(f, fp.report);
  write_fixedpoint_summary(fs, fp.report);
  files["fixedpoint.csv"] = f.str();
  files["fixedpoint_summary.txt"] = fs.str();

  const DyadicFamily family(grid);
  std::ostringstream b;
  write_besov_csv(b, besov_blocks(family, data.a, BesovSpec{}));
  files["besov_a.csv"] = b.str();

  const Grid grid32 = make_grid(2, 32, kTwoPi);
  const AState small =
      random_band_state(grid32, o.seed, 2, 1e-2, Normalization::linf, DataVariables::a_form, o.params);
  std::ostringstream s;
  write_scaling_csv(s, {2, 0.05, 0.01, scaling_test(small, o.params, 2, 0.05, 0.01),
                        critical_norm_ratio(small.a, 2, 1.0)});
  files["scaling.csv"] = s.str();
  return files;
}

}  // namespace thermogas
