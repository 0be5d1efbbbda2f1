#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "polystab/polytope.hpp"

using namespace polystab;

namespace {

AffineFunction aff(std::vector<int> lin, Rational c) {
  RatVec v;
  for (int x : lin) v.push_back(Rational(x));
  return AffineFunction(std::move(v), std::move(c));
}

LabeledPolytope unit_square() {
  return LabeledPolytope::build(
      {aff({1, 0}, 0), aff({0, 1}, 0), aff({-1, 0}, 1), aff({0, -1}, 1)});
}

}  // namespace

TEST_CASE("interval and triangle construction") {
  auto I = standard_simplex(1);
  CHECK(I.vertices().size() == 2);
  CHECK(I.vertices()[0] == RatVec{Rational(0)});
  CHECK(I.vertices()[1] == RatVec{Rational(1)});

  auto T = standard_simplex(2);
  CHECK(T.vertices().size() == 3);
  CHECK(triangulate(T).total_volume() == Rational(1, 2));
}

TEST_CASE("construction errors") {
  // contradictory half-spaces: lower-dimensional vertex skeleton
  CHECK_THROWS_AS(LabeledPolytope::build({aff({1}, 0), aff({1}, -1)}),
                  EmptyOrLowerDimensional);
  // full-rank vertex set with a recession direction
  CHECK_THROWS_AS(LabeledPolytope::build({aff({1, 0}, 0), aff({-1, 0}, 1),
                                          aff({1, 1}, 0), aff({-1, 1}, 1)}),
                  UnboundedPolytope);
  // non-primitive normal
  CHECK_THROWS_AS(LabeledPolytope::build({aff({2}, 0), aff({-2}, 2)}),
                  NonPrimitiveNormal);
  // inactive label
  CHECK_THROWS_AS(
      LabeledPolytope::build({aff({1}, 0), aff({-1}, 1), aff({-1}, 2)}),
      InactiveLabel);
  // pruning keeps the polytope and records the label
  auto p = LabeledPolytope::build({aff({1}, 0), aff({-1}, 1), aff({-1}, 2)},
                                  {.prune_inactive = true});
  CHECK(p.labels().size() == 2);
  CHECK(p.pruned_labels() == std::vector<int>{2});
}

TEST_CASE("delzant verdicts") {
  auto verdict = is_delzant(standard_simplex(3));
  CHECK(verdict.simple);
  CHECK(verdict.integral);
  CHECK(verdict.failing_vertices.empty());

  CHECK(is_delzant(unit_square()).integral);

  // crease polytope of max(0, 2x-1) at R=1: simple but not integral,
  // failing at the crease vertex with normals (0,-1), (-2,-1) of det -2
  auto p = LabeledPolytope::build({aff({1, 0}, 0), aff({-1, 0}, 1), aff({0, 1}, 0),
                                   aff({0, -1}, 1), aff({-2, -1}, 2)},
                                  {.prune_inactive = true});
  auto v = is_delzant(p);
  CHECK(v.simple);
  CHECK(!v.integral);
  CHECK(v.failing_vertices.size() == 2);  // (1/2,1) and (1,0)
}

TEST_CASE("delzant is invariant under lattice automorphisms") {
  // Apply the unimodular map x -> U x (labels pull back through U^{-1}).
  // U = [[1,1],[0,1]], U^{-1} = [[1,-1],[0,1]].
  auto transform = [](const AffineFunction& l) {
    RatMat uinv = {{Rational(1), Rational(-1)}, {Rational(0), Rational(1)}};
    return l.compose(uinv, {Rational(0), Rational(0)});
  };
  for (const auto& base : {standard_simplex(2), unit_square()}) {
    std::vector<AffineFunction> mapped;
    for (const auto& l : base.labels()) mapped.push_back(transform(l));
    auto image = LabeledPolytope::build(mapped);
    auto v0 = is_delzant(base), v1 = is_delzant(image);
    CHECK(v0.simple == v1.simple);
    CHECK(v0.integral == v1.integral);
  }
}

TEST_CASE("triangulation covers the polytope exactly") {
  // Volumes frozen from elementary geometry.
  CHECK(triangulate(unit_square()).total_volume() == 1);
  CHECK(triangulate(standard_simplex(3)).total_volume() == Rational(1, 6));
  CHECK(triangulate(standard_simplex(4)).total_volume() == Rational(1, 24));

  // trapezoid {0<=x<=1, 0<=y<=min(1, 2-2x)}: area 3/4
  auto trap = LabeledPolytope::build(
      {aff({1, 0}, 0), aff({0, 1}, 0), aff({0, -1}, 1), aff({-2, -1}, 2)});
  CHECK(triangulate(trap).total_volume() == Rational(3, 4));
}

TEST_CASE("crease subdivision") {
  auto T = standard_simplex(2);
  SUBCASE("no hyperplanes") {
    auto sub = triangulate_with_creases(T, {});
    CHECK(sub.total_volume() == Rational(1, 2));
  }
  SUBCASE("single crease point on an interval") {
    auto I = standard_simplex(1);
    auto sub = triangulate_with_creases(I, {aff({2}, -1)});
    REQUIRE(sub.simplices.size() == 2);
    std::set<RatVec> verts;
    for (const auto& s : sub.simplices)
      for (const auto& v : s) verts.insert(v);
    CHECK(verts.count(RatVec{Rational(1, 2)}) == 1);
    CHECK(sub.total_volume() == 1);
  }
  SUBCASE("symmetric split of the triangle") {
    auto sub = triangulate_with_creases(T, {aff({1, -1}, 0)});
    CHECK(sub.simplices.size() == 2);
    for (const auto& s : sub.simplices) CHECK(simplex_volume(s) == Rational(1, 4));
  }
  SUBCASE("globally signed and degenerate hyperplanes") {
    CHECK_NOTHROW(triangulate_with_creases(T, {affine_const(2, Rational(1))}));
    CHECK_THROWS_AS(triangulate_with_creases(T, {affine_const(2, Rational(0))}),
                    DegenerateHyperplane);
  }
  SUBCASE("signs are constant per simplex") {
    std::vector<AffineFunction> hyps = {aff({1, -1}, 0), aff({3, 1}, -1)};
    auto sub = triangulate_with_creases(T, hyps);
    CHECK(sub.total_volume() == Rational(1, 2));
    for (const auto& s : sub.simplices)
      for (const auto& h : hyps) {
        bool pos = false, neg = false;
        for (const auto& v : s) {
          if (h.eval(v) > 0) pos = true;
          if (h.eval(v) < 0) neg = true;
        }
        CHECK(!(pos && neg));
      }
  }
}

TEST_CASE("subdivision volume matches an independent vertex-set oracle") {
  // Oracle: exhaustive fan over an interior point, summed with the direct
  // determinant formula (independent of the pulling recursion order).
  auto fan_volume = [](const LabeledPolytope& p) {
    RatVec c = p.barycenter();
    Rational vol = 0;
    // cone the barycenter over every facet (dims 1 and 2 suffice here)
    for (size_t i = 0; i < p.labels().size(); ++i) {
      auto fverts = p.facet_vertices(static_cast<int>(i));
      std::sort(fverts.begin(), fverts.end());
      if (p.dim() == 1) {
        vol += simplex_volume({fverts[0], c});
      } else {
        for (size_t k = 0; k + 1 < fverts.size(); ++k)
          vol += simplex_volume({fverts[k], fverts[k + 1], c});
      }
    }
    return vol;
  };
  for (const auto& p : {standard_simplex(2), unit_square()}) {
    CHECK(triangulate(p).total_volume() == fan_volume(p));
  }
  auto trap = LabeledPolytope::build(
      {aff({1, 0}, 0), aff({0, 1}, 0), aff({0, -1}, 1), aff({-2, -1}, 2)});
  CHECK(triangulate(trap).total_volume() == fan_volume(trap));
}

TEST_CASE("vertex counts against exhaustive subset enumeration") {
  // standard l-simplex has l+1 vertices
  for (int l = 1; l <= 4; ++l)
    CHECK(standard_simplex(l).vertices().size() == static_cast<size_t>(l + 1));
}
