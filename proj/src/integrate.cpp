#include "polystab/integrate.hpp"

namespace polystab {

namespace {

Rational integrate_monomials_on_standard(const Polynomial& q) {
  // int_{std simplex} prod x_i^{a_i} dx = (prod a_i!)/(l + sum a_i)!
  const int l = q.dim();
  Rational total = 0;
  for (const auto& [e, c] : q.terms()) {
    Rational num = 1;
    int s = 0;
    for (int a : e) {
      num *= factorial(a);
      s += a;
    }
    total += c * num / factorial(l + s);
  }
  return total;
}

// Affine chart of a simplex: x = v0 + M lambda, lambda in the standard
// simplex; returns the pulled-back polynomial and |det M|.
std::pair<Polynomial, Rational> pull_to_standard(const std::vector<RatVec>& simplex,
                                                 const Polynomial& q) {
  const int d = static_cast<int>(simplex.size()) - 1;
  const int n = static_cast<int>(simplex[0].size());
  std::vector<AffineFunction> subs;  // x_i as affine in lambda
  for (int i = 0; i < n; ++i) {
    RatVec lin(d);
    for (int c = 0; c < d; ++c) lin[c] = simplex[c + 1][i] - simplex[0][i];
    subs.emplace_back(std::move(lin), simplex[0][i]);
  }
  Polynomial pulled = q.compose_affine(subs);
  if (d == n) {
    RatMat m;
    for (int c = 0; c < d; ++c) m.push_back(vec_sub(simplex[c + 1], simplex[0]));
    return {std::move(pulled), rational_abs(determinant(std::move(m)))};
  }
  return {std::move(pulled), Rational(1)};
}

}  // namespace

Rational integrate_polynomial_simplex(const std::vector<RatVec>& simplex,
                                      const Polynomial& q) {
  auto [pulled, jac] = pull_to_standard(simplex, q);
  return jac * integrate_monomials_on_standard(pulled);
}

Rational integrate_polynomial(const LabeledPolytope& p, const Polynomial& q) {
  if (q.dim() != p.dim()) throw DimensionMismatch("polynomial/polytope dimension");
  Rational total = 0;
  for (const auto& s : triangulate(p).simplices)
    total += integrate_polynomial_simplex(s, q);
  return total;
}

Rational facet_simplex_sigma(const std::vector<RatVec>& simplex,
                             const AffineFunction& label) {
  const int l = static_cast<int>(simplex[0].size());
  if (l == 1) return Rational(1);  // point facet of an interval
  if (!label.has_primitive_linear())
    throw NonPrimitiveNormal(-1);
  std::vector<Integer> normal(l);
  for (int i = 0; i < l; ++i) normal[i] = numerator(label.linear[i]);
  std::vector<Integer> qv = solve_unit_dot(normal);  // <p, qv> = 1
  RatMat m;
  for (size_t i = 1; i < simplex.size(); ++i)
    m.push_back(vec_sub(simplex[i], simplex[0]));
  RatVec qrow(l);
  for (int i = 0; i < l; ++i) qrow[i] = Rational(qv[i]);
  m.push_back(std::move(qrow));
  return rational_abs(determinant(std::move(m))) / factorial(l - 1);
}

namespace {

// int over a facet simplex of q dsigma: chart through the simplex vertices,
// dsigma mass spread by the (l-1)! simplex-volume normalization.
Rational integrate_facet_simplex(const std::vector<RatVec>& simplex,
                                 const AffineFunction& label, const Polynomial& q) {
  const int l = static_cast<int>(simplex[0].size());
  Rational sigma = facet_simplex_sigma(simplex, label);
  if (l == 1) return sigma * q.eval(simplex[0]);
  Polynomial pulled = pull_to_standard(simplex, q).first;
  return sigma * factorial(l - 1) * integrate_monomials_on_standard(pulled);
}

}  // namespace

Rational integrate_facet(const LabeledPolytope& p, int label_index, const Polynomial& q) {
  if (q.dim() != p.dim()) throw DimensionMismatch("polynomial/polytope dimension");
  Rational total = 0;
  for (const auto& s : triangulate_facet_with_creases(p, label_index, {}))
    total += integrate_facet_simplex(s, p.labels()[label_index], q);
  return total;
}

BoundaryIntegral integrate_boundary(const LabeledPolytope& p, const Polynomial& q) {
  BoundaryIntegral out;
  out.total = 0;
  for (size_t i = 0; i < p.labels().size(); ++i) {
    Rational fi = integrate_facet(p, static_cast<int>(i), q);
    out.per_facet.push_back(fi);
    out.total += fi;
  }
  return out;
}

Rational integrate_pl_product(const LabeledPolytope& p, const PLConvexFunction& f,
                              const Polynomial& q, Region region) {
  if (q.dim() != p.dim() || f.dim() != p.dim())
    throw DimensionMismatch("pl/polynomial/polytope dimension");
  if (region == Region::Interior) {
    Rational total = 0;
    SimplicialSubdivision sub = triangulate_with_creases(p, f.crease_hyperplanes());
    for (const auto& s : sub.simplices) {
      RatVec bary(p.dim(), Rational(0));
      for (const auto& v : s) bary = vec_add(bary, v);
      bary = vec_scale(Rational(1) / Rational(static_cast<int>(s.size())), bary);
      const AffineFunction& piece = f.pieces()[f.active_piece(bary)];
      total += integrate_polynomial_simplex(s, Polynomial::from_affine(piece) * q);
    }
    return total;
  }
  Rational total = 0;
  for (size_t i = 0; i < p.labels().size(); ++i)
    total += integrate_pl_product_facet(p, static_cast<int>(i), f, q);
  return total;
}

Rational integrate_pl_product_facet(const LabeledPolytope& p, int label_index,
                                    const PLConvexFunction& f, const Polynomial& q) {
  Rational total = 0;
  auto simplices = triangulate_facet_with_creases(p, label_index, f.crease_hyperplanes());
  for (const auto& s : simplices) {
    RatVec bary(p.dim(), Rational(0));
    for (const auto& v : s) bary = vec_add(bary, v);
    bary = vec_scale(Rational(1) / Rational(static_cast<int>(s.size())), bary);
    const AffineFunction& piece = f.pieces()[f.active_piece(bary)];
    total += integrate_facet_simplex(s, p.labels()[label_index],
                                     Polynomial::from_affine(piece) * q);
  }
  return total;
}

Rational integrate_pl_abs(const LabeledPolytope& p, const PLConvexFunction& f,
                          const Polynomial& q) {
  // Refine by creases and by the zero sets of the pieces so the sign of the
  // active piece is constant per simplex.
  std::vector<AffineFunction> hyps = f.crease_hyperplanes();
  for (const auto& piece : f.pieces()) {
    bool zero = piece.constant == 0;
    for (const auto& c : piece.linear)
      if (c != 0) zero = false;
    if (!zero) hyps.push_back(piece);
  }
  SimplicialSubdivision sub = triangulate_with_creases(p, hyps);
  Rational total = 0;
  for (const auto& s : sub.simplices) {
    RatVec bary(p.dim(), Rational(0));
    for (const auto& v : s) bary = vec_add(bary, v);
    bary = vec_scale(Rational(1) / Rational(static_cast<int>(s.size())), bary);
    const AffineFunction& piece = f.pieces()[f.active_piece(bary)];
    Rational val = integrate_polynomial_simplex(s, Polynomial::from_affine(piece) * q);
    total += piece.eval(bary) >= 0 ? val : -val;
  }
  return total;
}

}  // namespace polystab
