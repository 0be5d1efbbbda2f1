#include "polystab/donaldson.hpp"

namespace polystab {

TestConfigPolytope donaldson_polytope(const LabeledPolytope& base,
                                      const PLConvexFunction& f,
                                      std::optional<Rational> R) {
  const int ell = base.dim();
  for (const auto& piece : f.pieces())
    if (!piece.has_integer_linear())
      throw NonIntegerSlope("test-configuration pieces need integer slopes");

  Rational maxf = f.max_over(base);
  Rational r = R ? *R : Rational(ceil_rational(maxf)) + 1;
  if (r < maxf)
    throw NotStrictlyPositive("R - f is negative somewhere on the polytope");

  std::vector<AffineFunction> labels;
  for (const auto& lab : base.labels()) {
    RatVec lin = lab.linear;
    lin.push_back(Rational(0));
    labels.emplace_back(std::move(lin), lab.constant);
  }
  labels.push_back(affine_coord(ell + 1, ell));  // y >= 0
  for (const auto& piece : f.pieces()) {
    RatVec lin = vec_scale(Rational(-1), piece.linear);
    lin.push_back(Rational(-1));
    labels.emplace_back(std::move(lin), r - piece.constant);  // R - y - f_i >= 0
  }

  TestConfigPolytope tc;
  tc.base = base;
  tc.f = f;
  tc.R = r;
  tc.polytope = LabeledPolytope::build(
      std::move(labels), {.require_primitive = true, .prune_inactive = true});
  tc.delzant = is_delzant(tc.polytope);
  tc.classification = check_dpl_dom(tc);
  return tc;
}

TcClass check_dpl_dom(const TestConfigPolytope& tc) {
  if (!(tc.delzant.simple && tc.delzant.integral)) return TcClass::RPL;
  for (const auto& piece : tc.f.pieces()) {
    bool constant = true;
    for (const auto& c : piece.linear)
      if (c != 0) constant = false;
    if (constant) return TcClass::DPLDom;
  }
  return TcClass::DPL;
}

PLConvexFunction twist(const LabeledPolytope& base, const PLConvexFunction& f,
                       const AffineFunction& xi) {
  if (!xi.has_integer_linear())
    throw NonIntegerSlope("twist direction needs an integer slope");
  std::vector<AffineFunction> pieces;
  for (const auto& piece : f.pieces()) pieces.push_back(piece + xi);
  return make_pl(base, std::move(pieces));
}

}  // namespace polystab
