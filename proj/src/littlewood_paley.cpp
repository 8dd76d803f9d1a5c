#include "thermogas/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "thermogas/norms.hpp"
#include "thermogas/spectral.hpp"

namespace thermogas {

namespace {

double bump_tail(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double block_l2(const DyadicFamily& family, const SpectralField& u_hat, int j) {
  const auto& m = family.multiplier(j);
  double acc = 0.0;
  for (std::size_t i = 0; i < u_hat.size(); ++i) acc += m[i] * m[i] * std::norm(u_hat[i]);
  return std::sqrt(acc * u_hat.grid().volume());
}

SpectralField apply_multiplier(const std::vector<double>& m, const SpectralField& u_hat) {
  SpectralField out(u_hat.grid());
  for (std::size_t i = 0; i < u_hat.size(); ++i) out[i] = m[i] * u_hat[i];
  return out;
}

double block_norm(const DyadicFamily& family, const SpectralField& u_hat, int j, double p) {
  if (p == 2.0) return block_l2(family, u_hat, j);
  return lp_norm(inverse(apply_multiplier(family.multiplier(j), u_hat)), p);
}

std::vector<BesovBlock> blocks_of(const DyadicFamily& family, const SpectralField& u_hat,
                                  const BesovSpec& spec) {
  spec.validate();
  std::vector<BesovBlock> out;
  double acc = 0.0;
  for (int j = family.j_min(); j <= family.j_max(); ++j) {
    const double w = std::exp2(j * spec.s) * block_norm(family, u_hat, j, spec.p);
    double cumulative;
    if (std::isinf(spec.r)) {
      acc = std::max(acc, w);
      cumulative = acc;
    } else {
      acc += std::pow(w, spec.r);
      cumulative = std::pow(acc, 1.0 / spec.r);
    }
    out.push_back({j, w, cumulative});
  }
  return out;
}

}  // namespace

double phi0(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 7.0 / 6.0) return 0.0;
  const double t = 6.0 * (r - 1.0);
  const double a = bump_tail(1.0 - t);
  const double b = bump_tail(t);
  return a / (a + b);
}

double phi(double r) { return phi0(r) - phi0(2.0 * r); }

DyadicFamily::DyadicFamily(const Grid& grid) : grid_(grid), zeros_(grid.size(), 0.0) {
  j_min_ = static_cast<int>(std::floor(std::log2(grid.wavenumber_unit()))) - 1;
  j_max_ = static_cast<int>(std::ceil(std::log2(grid.max_wavenumber()))) + 1;
  for (int j = j_min_; j <= j_max_; ++j) {
    std::vector<double> m(grid.size(), 0.0);
    const double scale = std::exp2(-j);
    for (std::size_t i = 1; i < grid.size(); ++i) m[i] = phi(scale * std::sqrt(grid.k_squared(i)));
    multipliers_.push_back(std::move(m));
  }
}

const std::vector<double>& DyadicFamily::multiplier(int j) const {
  if (j < j_min_ || j > j_max_) return zeros_;
  return multipliers_[static_cast<std::size_t>(j - j_min_)];
}

std::vector<double> DyadicFamily::low_pass(int j) const {
  std::vector<double> m(grid_.size());
  const double scale = std::exp2(-j);
  for (std::size_t i = 0; i < grid_.size(); ++i) m[i] = phi0(scale * std::sqrt(grid_.k_squared(i)));
  return m;
}

double DyadicFamily::partition_residual() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    double sum = 0.0;
    for (const auto& m : multipliers_) sum += m[i];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

DyadicFamily build_dyadic_family(const Grid& grid) { return DyadicFamily(grid); }

RealField dyadic_block(const DyadicFamily& family, const RealField& u, int j, BlockKind kind) {
  require_same_grid(family.grid(), u.grid(), "dyadic_block");
  const auto u_hat = forward(u);
  if (kind == BlockKind::delta) return inverse(apply_multiplier(family.multiplier(j), u_hat));
  return inverse(apply_multiplier(family.low_pass(j), u_hat));
}

void BesovSpec::validate() const {
  if (!std::isfinite(s)) throw std::invalid_argument("besov s must be finite");
  if (!(p >= 1.0)) throw std::invalid_argument("besov p must be >= 1");
  if (!(r >= 1.0)) throw std::invalid_argument("besov r must be >= 1");
}

double besov_norm(const DyadicFamily& family, const SpectralField& u_hat, const BesovSpec& spec) {
  require_same_grid(family.grid(), u_hat.grid(), "besov_norm");
  const auto blocks = blocks_of(family, u_hat, spec);
  return blocks.empty() ? 0.0 : blocks.back().cumulative;
}

double besov_norm(const DyadicFamily& family, const RealField& u, const BesovSpec& spec) {
  if (!u.all_finite()) throw std::invalid_argument("besov norm of a field with non-finite values");
  return besov_norm(family, forward(u), spec);
}

std::vector<BesovBlock> besov_blocks(const DyadicFamily& family, const RealField& u, const BesovSpec& spec) {
  require_same_grid(family.grid(), u.grid(), "besov_blocks");
  if (!u.all_finite()) throw std::invalid_argument("besov norm of a field with non-finite values");
  return blocks_of(family, forward(u), spec);
}

std::optional<double> bernstein_check(const DyadicFamily& family, const RealField& u, int j, double p) {
  require_same_grid(family.grid(), u.grid(), "bernstein_check");
  const auto u_hat = forward(u);
  const auto block_hat = apply_multiplier(family.multiplier(j), u_hat);
  // A block holding only transform round-off counts as empty.
  double top = 0.0, block_top = 0.0;
  for (const auto& c : u_hat.coefficients()) top = std::max(top, std::abs(c));
  for (const auto& c : block_hat.coefficients()) block_top = std::max(block_top, std::abs(c));
  if (!(block_top > 1e-13 * top)) return std::nullopt;
  const double base = lp_norm(inverse(block_hat), p);
  std::vector<RealField> grad;
  for (const auto& g : gradient(block_hat)) grad.push_back(inverse(g));
  return lp_norm(grad, p) / (std::exp2(j) * base);
}

EquivalenceBounds besov_sobolev_bounds(const DyadicFamily& family, double s) {
  const Grid& grid = family.grid();
  EquivalenceBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double acc = 0.0;
    for (int j = family.j_min(); j <= family.j_max(); ++j) {
      const double m = family.multiplier(j)[i];
      acc += std::exp2(2.0 * j * s) * m * m;
    }
    const double ratio = std::sqrt(acc) / std::pow(grid.k_squared(i), 0.5 * s);
    b.c1 = std::min(b.c1, ratio);
    b.c2 = std::max(b.c2, ratio);
  }
  return b;
}

std::optional<double> product_law_check(const DyadicFamily& family, const RealField& u, const RealField& v,
                                        const ProductLawSpec& spec) {
  require_same_grid(family.grid(), u.grid(), "product_law_check");
  require_same_grid(family.grid(), v.grid(), "product_law_check");
  const double sc = 0.5 * family.grid().dim();
  const double s1 = spec.s1;
  const double s2 = spec.s2;
  const double r = spec.r;
  auto bn = [&](const RealField& f, double s, double rr) { return besov_norm(family, f, {s, 2.0, rr}); };
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  };

  RealField uv(u.grid());
  for (std::size_t i = 0; i < uv.size(); ++i) uv[i] = u[i] * v[i];

  double lhs = 0.0;
  double rhs = 0.0;
  switch (spec.law) {
    case ProductLaw::algebra:
      lhs = bn(uv, sc, 1.0);
      rhs = bn(u, sc, 1.0) * bn(v, sc, 1.0);
      break;
    case ProductLaw::tame:
      need(s1 > 0.0, "tame product law needs s1 > 0");
      lhs = bn(uv, s1, r);
      rhs = u.max_abs() * bn(v, s1, r) + v.max_abs() * bn(u, s1, r);
      break;
    case ProductLaw::mixed:
      need(s1 <= sc && s2 > sc && s1 + s2 > 0.0, "mixed product law needs s1 <= d/2 < s2 and s1 + s2 > 0");
      lhs = bn(uv, s1, r);
      rhs = bn(u, s1, r) * bn(v, s2, r);
      break;
    case ProductLaw::subcritical: {
      const bool below = r == 1.0 ? (s1 <= sc && s2 <= sc) : (s1 < sc && s2 < sc);
      need(below && s1 + s2 > 0.0, "subcritical product law needs s1, s2 < d/2 and s1 + s2 > 0");
      lhs = bn(uv, s1 + s2 - sc, r);
      rhs = bn(u, s1, r) * bn(v, s2, r);
      break;
    }
    case ProductLaw::critical_pair:
      need(std::abs(s1) < sc, "critical-pair product law needs |s1| < d/2");
      lhs = bn(uv, s1, r);
      rhs = bn(u, s1, r) * (bn(v, sc, r) + v.max_abs());
      break;
  }
  if (!(rhs > 0.0)) return std::nullopt;
  return lhs / rhs;
}

}  // namespace thermogas
