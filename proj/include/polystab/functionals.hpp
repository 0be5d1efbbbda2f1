#pragma once

#include "polystab/integrate.hpp"
#include "polystab/weights.hpp"

namespace polystab {

/// F^Delta_{v,w}(f) = 2 int_bd f v dsigma - int f w v dx, exact. The weight
/// w may carry poles as long as they cancel against the density v.
Rational futaki(const LabeledPolytope& p, const Polynomial& v_density,
                const WeightExpr& w, const PLConvexFunction& f);

/// Overload with a structured v; it must be pole-free (poles belong to w).
Rational futaki(const LabeledPolytope& p, const WeightExpr& v, const WeightExpr& w,
                const PLConvexFunction& f);

/// Quadrature fallback for weights that do not reduce to polynomials
/// (opaque evaluators, uncancelled poles with finite integrals): the
/// float-tagged value with its error estimate.
struct ApproxValue {
  double value = 0;
  double error = 0;
  bool converged = true;
};

ApproxValue futaki_numeric(const LabeledPolytope& p, const WeightExpr& v,
                           const WeightExpr& w, const PLConvexFunction& f,
                           double rel_tol);

/// Positivity functional
///   F+_{pv}(f) = 2 int_bd f pv dsigma + sum_{d_j >= 2} int 2d_j(d_j-1)/L_j f pv dx.
Rational fplus(const LabeledPolytope& p, const Polynomial& density,
               const std::vector<BlockData>& blocks, const PLConvexFunction& f);

/// f - (subtangent at x0): nonnegative, vanishing at x0.
struct NormalizedPL {
  PLConvexFunction f_star;
  RatVec base_point;
  AffineFunction removed_affine;
};

NormalizedPL normalize_star(const LabeledPolytope& p, const PLConvexFunction& f,
                            const RatVec& x0);

/// v-weighted L1 norm of a PL function, exact (sign split along pieces).
Rational l1_norm(const LabeledPolytope& p, const Polynomial& v, const PLConvexFunction& f);

/// v-weighted J-norm: inf over affine xi of int (f + xi - inf(f + xi)) v dx;
/// one exact LP over the crease-subdivision vertices.
Rational j_norm(const LabeledPolytope& p, const Polynomial& v, const PLConvexFunction& f);

/// Exact scalar carrying a (2 pi)^k tag.
struct FunctionalValue {
  Rational rational_part{0};
  int two_pi_power = 0;
  double float_view() const;
};

enum class NaKind { Toric, Compatible };
enum class NaQuantity { DonaldsonFutaki, JNorm };

/// Scaling conversions to non-Archimedean invariants:
///   DF = (2pi)^{n+1} F                 (toric)
///   J  = (2pi)^{n+1} j / Vol           (toric)
/// with an extra factor Vol(Delta_B) in the compatible case.
FunctionalValue na_convert(const Rational& value, NaKind kind, NaQuantity quantity,
                           int n, const Rational& volume, const Rational& vol_delta_b);

}  // namespace polystab
