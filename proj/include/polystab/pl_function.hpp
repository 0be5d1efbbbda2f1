#pragma once

#include <vector>

#include "polystab/affine.hpp"
#include "polystab/errors.hpp"
#include "polystab/polytope.hpp"

namespace polystab {

/// Convex piecewise-linear function f = max(f_1, ..., f_p) given by its
/// affine pieces. Pieces are kept sorted; construction through make_pl
/// prunes pieces inactive on the polytope of interest.
class PLConvexFunction {
 public:
  PLConvexFunction() = default;
  explicit PLConvexFunction(std::vector<AffineFunction> pieces);

  const std::vector<AffineFunction>& pieces() const { return pieces_; }
  int dim() const { return pieces_.empty() ? 0 : pieces_[0].dim(); }

  Rational eval(const RatVec& x) const;
  double eval(const std::vector<double>& x) const;

  /// Pairwise differences of pieces, deduplicated up to positive scaling.
  std::vector<AffineFunction> crease_hyperplanes() const;

  /// Index of a piece attaining the max at x (smallest index on ties).
  int active_piece(const RatVec& x) const;

  /// max over the polytope; attained at a polytope vertex by convexity.
  Rational max_over(const LabeledPolytope& p) const;
  /// min over the polytope (epigraph LP).
  Rational min_over(const LabeledPolytope& p) const;

  PLConvexFunction shifted(const AffineFunction& xi) const;
  PLConvexFunction scaled(const Rational& c) const;  // c > 0

  bool operator==(const PLConvexFunction& o) const { return pieces_ == o.pieces_; }

 private:
  std::vector<AffineFunction> pieces_;
};

/// Deduplicates pieces and prunes those never active on p (exact LP test:
/// max over p of f_k - max_{j != k} f_j < 0). Deterministic ordering.
PLConvexFunction make_pl(const LabeledPolytope& p, std::vector<AffineFunction> pieces);

/// All vertices of the crease subdivision of p induced by f (includes the
/// vertices of p). PL convex functions attain extrema over cells here.
std::vector<RatVec> crease_subdivision_vertices(const LabeledPolytope& p,
                                                const PLConvexFunction& f);

}  // namespace polystab
