#pragma once

#include "polystab/pl_function.hpp"
#include "polystab/polynomial.hpp"
#include "polystab/polytope.hpp"

namespace polystab {

/// Exact integral of q over the polytope interior (Lebesgue dx).
/// Pullback to the standard simplex per subdivision simplex and the closed
/// form  int_{std simplex} prod x_i^{a_i} dx = (prod a_i!)/(l + sum a_i)!.
Rational integrate_polynomial(const LabeledPolytope& p, const Polynomial& q);

/// Integral over one simplex (vertices in ambient coordinates).
Rational integrate_polynomial_simplex(const std::vector<RatVec>& simplex,
                                      const Polynomial& q);

/// Lattice boundary measure d(sigma) normalized by dL ^ dsigma = -dx.
/// The measure of a facet simplex (w_0..w_{l-1}) on {L_i = 0} is
/// |det[w_1-w_0, ..., w_{l-1}-w_0, q]| / (l-1)!  for any lattice vector q
/// with dL_i(q) = -1.
struct BoundaryIntegral {
  Rational total;
  std::vector<Rational> per_facet;  // ordered like p.labels()
};

BoundaryIntegral integrate_boundary(const LabeledPolytope& p, const Polynomial& q);

/// dsigma integral of q over the single facet {L_i = 0}.
Rational integrate_facet(const LabeledPolytope& p, int label_index, const Polynomial& q);

enum class Region { Interior, Boundary };

/// Exact integral of f * q where f is PL convex: the polytope is subdivided
/// along the crease hyperplanes of f, on each piece f is a single affine
/// function.
Rational integrate_pl_product(const LabeledPolytope& p, const PLConvexFunction& f,
                              const Polynomial& q, Region region);

/// Per-facet version of the boundary case.
Rational integrate_pl_product_facet(const LabeledPolytope& p, int label_index,
                                    const PLConvexFunction& f, const Polynomial& q);

/// Exact integral of |f| * q over the interior.
Rational integrate_pl_abs(const LabeledPolytope& p, const PLConvexFunction& f,
                          const Polynomial& q);

/// dsigma measure of the facet simplex (ambient vertices) of {L = 0}.
Rational facet_simplex_sigma(const std::vector<RatVec>& simplex,
                             const AffineFunction& label);

}  // namespace polystab
