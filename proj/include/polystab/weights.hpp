#pragma once

#include <functional>
#include <optional>

#include "polystab/integrate.hpp"
#include "polystab/polynomial.hpp"
#include "polystab/polytope.hpp"

namespace polystab {

/// One block of the decomposition: rank, degree, slope, and the simplex
/// label it is attached to (L_k = x_k for k >= 1, L_0 = 1 - sum x).
struct BlockData {
  int index = 0;
  int rank = 1;
  int degree = 0;
  Rational slope() const { return Rational(degree) / Rational(rank); }
  AffineFunction label;  // on the standard simplex of the block structure
};

std::vector<BlockData> make_blocks(const std::vector<std::pair<int, int>>& rank_degree);

/// Structured weight function: polynomial core, an optional affine slot for
/// the extremal function, simple poles against affine denominators, and an
/// optional opaque evaluator for everything else.
struct PoleTerm {
  Rational coef;
  AffineFunction denom;
};

struct WeightExpr {
  Polynomial poly;
  bool has_extremal_slot = false;
  std::optional<AffineFunction> extremal;  // filled by resolve_extremal
  std::vector<PoleTerm> poles;
  std::function<double(const std::vector<double>&)> opaque;

  WeightExpr() : poly(0) {}
  explicit WeightExpr(int dim) : poly(dim) {}
  static WeightExpr from_polynomial(Polynomial p);
  static WeightExpr from_constant(int dim, const Rational& c);

  int dim() const { return poly.dim(); }
  bool has_poles() const { return !poles.empty(); }
  bool resolved() const { return !has_extremal_slot || extremal.has_value(); }

  void resolve_extremal(const AffineFunction& l_ext);

  /// w * density as a polynomial; every pole denominator must divide the
  /// density exactly. Throws PoleNotCancelled otherwise.
  Polynomial pair_with(const Polynomial& density) const;

  /// Pole-free part as a polynomial (poly + resolved affine slot).
  Polynomial polynomial_part() const;

  double eval(const std::vector<double>& x) const;
  Rational eval_exact(const RatVec& x) const;  // throws on pole at x
};

/// Weight bundle for the projectivized-sum setup: the fiber density
/// p = prod L_j^{d_j - 1} and the correction poles turning an outer weight
/// w into  w - sum_{d_j >= 2} 2 d_j (d_j - 1) / L_j.
struct FiberWeights {
  Polynomial p;
  std::vector<PoleTerm> corrections;

  /// hat(w) for a polynomial outer weight.
  WeightExpr hat(const Polynomial& w) const;
};

FiberWeights fiber_weights(const std::vector<BlockData>& blocks);

/// User-facing description of P(sum E_j) -> C.
struct TwoPiTag {
  Rational coefficient{1};
  int power = 0;  // value = coefficient * (2 pi)^power
  double value() const;
};

struct BundleSpec {
  int genus = 0;
  std::vector<std::pair<int, int>> blocks;  // (rank, degree)
  Rational c{1};
  TwoPiTag base_volume{Rational(1), 1};  // Vol(C, [omega_C]), default 2*pi

  int ell() const { return static_cast<int>(blocks.size()) - 1; }
  int n() const;  // sum d_j - 1
  void validate() const;  // throws KaehlerConeViolation etc.
};

/// Density p * pbar and the weight wbar = l_ext - sum 2d_j(d_j-1)/L_j
/// - 4(1-genus)/pbar with the extremal slot left unresolved.
struct BundleWeights {
  Polynomial density;   // p * pbar
  Polynomial p;         // fiber part
  AffineFunction pbar;  // c - sum slope_j L_j
  WeightExpr wbar;      // extremal slot unresolved
  std::vector<BlockData> block_data;
};

BundleWeights bundle_weights(const BundleSpec& spec);

/// Unique affine l_ext with
///   int g l_ext measure dx = 2 int_bd g rhs_boundary dsigma + int g rhs_interior dx
/// for all affine g, solved through the exact (l+1)x(l+1) Gram system.
AffineFunction solve_extremal(const LabeledPolytope& p, const Polynomial& measure,
                              const Polynomial& rhs_boundary,
                              const Polynomial& rhs_interior);

/// Gram matrix of {1, x_1, ..., x_l} against the measure (used by tests for
/// the positive-definiteness property).
RatMat extremal_gram(const LabeledPolytope& p, const Polynomial& measure);

}  // namespace polystab
