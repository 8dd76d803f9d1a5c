#pragma once

#include <optional>
#include <vector>

#include "thermogas/field.hpp"

namespace thermogas {

/// Radial cutoff: 1 on r <= 1, 0 on r >= 7/6, and on the transition
/// t = 6(r - 1) in (0, 1) the ratio g(1 - t)/(g(1 - t) + g(t)) with g(t) = exp(-1/t).
double phi0(double r);

/// phi(r) = phi0(r) - phi0(2r), supported in [1/2, 7/6].
double phi(double r);

/// Dyadic blocks on a grid: multiplier j samples phi(2^{-j}|k|) over the lattice.
class DyadicFamily {
 public:
  explicit DyadicFamily(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  /// phi(2^{-j}|k|) per flat spectral index; all zeros for j outside the range.
  const std::vector<double>& multiplier(int j) const;

  /// phi0(2^{-j}|k|) per flat spectral index (the low-pass S_j), including k = 0.
  std::vector<double> low_pass(int j) const;

  /// max over nonzero k of |sum_j phi_j(k) - 1|.
  double partition_residual() const;

 private:
  Grid grid_;
  int j_min_;
  int j_max_;
  std::vector<std::vector<double>> multipliers_;
  std::vector<double> zeros_;
};

DyadicFamily build_dyadic_family(const Grid& grid);

enum class BlockKind { delta, low_pass };

/// Delta_j u or S_j u by spectral multiplication.
RealField dyadic_block(const DyadicFamily& family, const RealField& u, int j, BlockKind kind);

struct BesovSpec {
  double s = 1.5;
  double p = 2.0;
  double r = 1.0;
  /// Throws std::invalid_argument unless p, r >= 1 and s is finite.
  void validate() const;
};

/// One row of a Besov report: 2^{js} ||Delta_j u||_{L^p} and the running norm.
struct BesovBlock {
  int j;
  double weighted;
  double cumulative;
};

/// Homogeneous Besov norm (sum_j (2^{js} ||Delta_j u||_p)^r)^{1/r}; sup for r = inf.
/// p = 2 goes through Parseval, other p through physical-space quadrature.
double besov_norm(const DyadicFamily& family, const RealField& u, const BesovSpec& spec);
double besov_norm(const DyadicFamily& family, const SpectralField& u_hat, const BesovSpec& spec);

/// Per-block breakdown of besov_norm.
std::vector<BesovBlock> besov_blocks(const DyadicFamily& family, const RealField& u, const BesovSpec& spec);

/// ||grad Delta_j u||_p / (2^j ||Delta_j u||_p); nullopt when the block vanishes
/// (no coefficient above 1e-13 of the largest one of u).
std::optional<double> bernstein_check(const DyadicFamily& family, const RealField& u, int j, double p);

/// Bounds [c1, c2] of the Bdot^s_{2,2} / Hdot^s ratio over nonzero lattice modes.
struct EquivalenceBounds {
  double c1;
  double c2;
};
EquivalenceBounds besov_sobolev_bounds(const DyadicFamily& family, double s);

/// Product laws with p = 2. The critical index sc = d/2 plays the role of 3/2
/// in three dimensions; ||.||_{s,r} below is the Bdot^s_{2,r} norm.
enum class ProductLaw {
  algebra,        ///< ||uv||_{sc,1} vs ||u||_{sc,1} ||v||_{sc,1}; s1, s2, r are ignored
  tame,           ///< ||uv||_{s1,r} vs ||u||_inf ||v||_{s1,r} + ||v||_inf ||u||_{s1,r}, s1 > 0
  mixed,          ///< ||uv||_{s1,r} vs ||u||_{s1,r} ||v||_{s2,r}, s1 <= sc < s2, s1 + s2 > 0
  subcritical,    ///< ||uv||_{s1+s2-sc,r} vs ||u||_{s1,r} ||v||_{s2,r}, s1, s2 < sc (<= if r = 1), s1 + s2 > 0
  critical_pair,  ///< ||uv||_{s1,r} vs ||u||_{s1,r} (||v||_{sc,r} + ||v||_inf), |s1| < sc
};

struct ProductLawSpec {
  ProductLaw law = ProductLaw::algebra;
  double s1 = 1.5;
  double s2 = 1.5;
  double r = 1.0;
};

/// Measured left/right ratio of the selected law; nullopt when the right-hand
/// side vanishes. Throws std::invalid_argument when the indices violate the
/// law's hypotheses.
std::optional<double> product_law_check(const DyadicFamily& family, const RealField& u, const RealField& v,
                                        const ProductLawSpec& spec);

}  // namespace thermogas
