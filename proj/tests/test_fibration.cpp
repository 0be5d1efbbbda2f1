#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polystab/fibration.hpp"

using namespace polystab;

namespace {

Polynomial X(int k = 0, int dim = 1) { return Polynomial::coordinate(dim, k); }
Polynomial C(const Rational& c, int dim = 1) { return Polynomial::constant(dim, c); }

AffineFunction aff(std::vector<int> lin, Rational c) {
  RatVec v;
  for (int x : lin) v.push_back(Rational(x));
  return AffineFunction(std::move(v), std::move(c));
}

}  // namespace

TEST_CASE("fiber models") {
  SUBCASE("ranks (1,1): hat simplex equals the base") {
    auto m = FiberModel::build(make_blocks({{1, 0}, {1, 0}}));
    CHECK(m.n() == 1);
    CHECK(m.vol_delta_b() == 1);
    CHECK(m.delta_hat().same_vertex_set(m.delta()));
  }
  SUBCASE("ranks (2,2): standard 3-simplex after the unimodular change") {
    auto m = FiberModel::build(make_blocks({{2, 0}, {2, 0}}));
    CHECK(m.n() == 3);
    CHECK(m.vol_delta_b() == 1);
    auto verdict = is_delzant(m.delta_hat());
    CHECK(verdict.simple);
    CHECK(verdict.integral);
    // push the labels through the standardizing map and compare
    auto map = m.to_standard_map();
    std::vector<AffineFunction> mapped;
    for (const auto& l : m.delta_hat().labels()) {
      RatMat a(m.n(), RatVec(m.n()));
      RatVec b(m.n());
      for (int i = 0; i < m.n(); ++i) {
        a[i] = map[i].linear;
        b[i] = map[i].constant;
      }
      mapped.push_back(l.compose(a, b));
    }
    auto image = LabeledPolytope::build(mapped);
    CHECK(image.same_vertex_set(standard_simplex(m.n())));
    // the standard label bookkeeping matches subset sums
    for (int j = 0; j <= m.ell(); ++j) {
      AffineFunction lj_via_subset = subset_affine(m.n(), m.standard_subset_of_block(j));
      Polynomial lj_hat = Polynomial::from_affine(m.blocks()[j].label)
                              .compose_affine({map[0]});  // L_j(x(y)), ell = 1
      CHECK(Polynomial::from_affine(lj_via_subset) == lj_hat);
    }
  }
  SUBCASE("ranks (3,1): dimensions and Vol(Delta_B) = 1/2") {
    auto m = FiberModel::build(make_blocks({{3, 0}, {1, 0}}));
    CHECK(m.n() == 3);
    CHECK(m.delta_hat().dim() == 3);
    CHECK(m.vol_delta_b() == Rational(1, 2));
    auto verdict = is_delzant(m.delta_hat());
    CHECK(verdict.simple);
    CHECK(verdict.integral);
  }
}

TEST_CASE("worked transfer identities for ranks (2,2)") {
  auto m = FiberModel::build(make_blocks({{2, 0}, {2, 0}}));
  SUBCASE("pullback of f = x against v = 1 gives 1/12 on both sides") {
    auto rep = verify_identities(m, PLConvexFunction({affine_coord(1, 0)}), C(1),
                                 WeightExpr::from_constant(1, Rational(0)));
    CHECK(rep.pullback.lhs == Rational(1, 12));
    CHECK(rep.pullback.rhs == Rational(1, 12));
    CHECK(rep.all_zero());
  }
  SUBCASE("futaki transfer hits the worked value 1/4") {
    auto f = make_pl(m.delta(), {affine_const(1, Rational(0)), aff({2}, -1)});
    auto rep = verify_identities(m, f, C(1), WeightExpr::from_constant(1, Rational(24)));
    CHECK(rep.futaki_transfer.lhs == Rational(1, 4));
    CHECK(rep.futaki_transfer.rhs == Rational(1, 4));
    CHECK(rep.all_zero());
  }
}

TEST_CASE("identity battery across block structures") {
  std::mt19937_64 rng(4242);
  auto rnd = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  std::vector<std::vector<std::pair<int, int>>> structures = {
      {{1, 0}, {1, 0}}, {{2, 0}, {1, 0}}, {{2, 0}, {2, 0}}, {{3, 0}, {1, 0}},
      {{3, 0}, {2, 0}}, {{1, 0}, {1, 0}, {1, 0}}, {{2, 0}, {1, 0}, {1, 0}},
  };
  int instances = 0;
  for (const auto& ranks : structures) {
    auto m = FiberModel::build(make_blocks(ranks));
    const int ell = m.ell();
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<AffineFunction> pieces;
      int np = 1 + rnd(0, 2);
      for (int k = 0; k < np; ++k) {
        RatVec lin(ell);
        for (int i = 0; i < ell; ++i) lin[i] = Rational(rnd(-2, 2));
        pieces.emplace_back(std::move(lin), Rational(rnd(-2, 2), rnd(1, 3)));
      }
      auto f = make_pl(m.delta(), std::move(pieces));
      Polynomial v = C(Rational(rnd(1, 3)), ell);
      if (rnd(0, 1)) v = v + X(rnd(0, ell - 1), ell);
      if (rnd(0, 1)) v = v + X(rnd(0, ell - 1), ell) * X(rnd(0, ell - 1), ell);
      Polynomial w = C(Rational(rnd(-2, 4)), ell) + X(rnd(0, ell - 1), ell).scaled(Rational(rnd(-2, 2)));
      auto rep = verify_identities(m, f, v, WeightExpr::from_polynomial(w));
      CHECK(rep.all_zero());
      ++instances;
    }
  }
  CHECK(instances >= 25);
}

TEST_CASE("bundle problems") {
  SUBCASE("worked instance") {
    BundleSpec spec{.genus = 0, .blocks = {{1, 0}, {1, 1}}, .c = Rational(2)};
    auto prob = bundle_problem(spec);
    CHECK(prob.weights.density == C(2) - X());
    CHECK(prob.l_ext.constant == Rational(108, 13));
    CHECK(prob.l_ext.linear[0] == Rational(-48, 13));
    CHECK(prob.weights.wbar.pair_with(prob.weights.density) ==
          Polynomial::from_affine(prob.l_ext) * (C(2) - X()) - C(4));
    CHECK(prob.j_lower_factor == 1);  // min(2 - x) over [0,1]
    CHECK(prob.fiber_df_multiplier.two_pi_power == 2);
    CHECK(prob.bundle_df_multiplier.two_pi_power == 3);  // Vol(C) = 2 pi
  }
  SUBCASE("balanced ranks (1,1): F > 0 on a battery of nonaffine convex f") {
    BundleSpec spec{.genus = 0, .blocks = {{1, 0}, {1, 0}}, .c = Rational(1)};
    auto prob = bundle_problem(spec);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 15; ++k) {
      long a = 1 + static_cast<long>(rng() % 4);
      long b = static_cast<long>(rng() % 3);
      Rational s(static_cast<long>(rng() % 3) + 1, 4);  // crease in (0,1)
      auto f = make_pl(prob.delta,
                       {affine_const(1, Rational(0)),
                        AffineFunction({Rational(a)}, -Rational(a) * s),
                        AffineFunction({Rational(-b)}, Rational(b) * s)});
      if (f.pieces().size() < 2) continue;  // affine after pruning
      CHECK(prob.futaki_of(f) > 0);
    }
  }
  SUBCASE("ranks (2,2) balanced: polynomial pairing of degree <= 3") {
    BundleSpec spec{.genus = 0, .blocks = {{2, 0}, {2, 0}}, .c = Rational(1)};
    auto prob = bundle_problem(spec);
    CHECK(prob.weights.density == X() * (C(1) - X()));
    Polynomial paired = prob.weights.wbar.pair_with(prob.weights.density);
    CHECK(paired.total_degree() <= 3);
    // residuals vanish
    CHECK(prob.futaki_of(PLConvexFunction({affine_coord(1, 0)})) == 0);
    CHECK(prob.futaki_of(PLConvexFunction({affine_const(1, Rational(1))})) == 0);
  }
  SUBCASE("multiplier positivity across random specs") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      int ell = 1 + static_cast<int>(rng() % 2);
      std::vector<std::pair<int, int>> blocks;
      Rational max_slope(-100);
      for (int j = 0; j <= ell; ++j) {
        int rank = 1 + static_cast<int>(rng() % 3);
        int degree = static_cast<int>(rng() % 9) - 4;
        blocks.emplace_back(rank, degree);
        max_slope = std::max(max_slope, Rational(degree, rank));
      }
      BundleSpec spec{.genus = static_cast<int>(rng() % 3), .blocks = blocks,
                      .c = max_slope + Rational(1 + static_cast<int>(rng() % 5), 3)};
      auto prob = bundle_problem(spec);
      CHECK(prob.j_lower_factor > 0);
      CHECK(prob.bundle_df_multiplier.rational_part > 0);
    }
  }
}

TEST_CASE("two DF routes coincide for ranks (1,1)") {
  // Delta_hat = Delta: the hat-side Futaki and the weighted base-side
  // Futaki are the same rational number computed through different paths.
  auto m = FiberModel::build(make_blocks({{1, 0}, {1, 0}}));
  auto f = make_pl(m.delta(), {affine_const(1, Rational(0)), aff({2}, -1)});
  Polynomial v = C(1) + X().scaled(Rational(1, 2));
  WeightExpr w = WeightExpr::from_polynomial(C(3) + X());
  auto rep = verify_identities(m, f, v, w);
  CHECK(rep.futaki_transfer.difference() == 0);
  Rational base_side = futaki(m.delta(), m.p() * v, fiber_weights(m.blocks()).hat(w.poly), f);
  CHECK(rep.futaki_transfer.lhs == base_side);
}

TEST_CASE("pullback input validation") {
  auto m = FiberModel::build(make_blocks({{2, 0}, {2, 0}}));
  CHECK_THROWS_AS(
      verify_identities(m, PLConvexFunction({affine_coord(3, 0)}), C(1, 3),
                        WeightExpr::from_constant(3, Rational(1))),
      PullbackNotConstantAlongFibers);
}
