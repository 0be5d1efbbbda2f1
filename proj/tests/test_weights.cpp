#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polystab/weights.hpp"

using namespace polystab;

namespace {

Polynomial X(int dim = 1, int k = 0) { return Polynomial::coordinate(dim, k); }
Polynomial C(const Rational& c, int dim = 1) { return Polynomial::constant(dim, c); }

}  // namespace

TEST_CASE("fiber weights") {
  SUBCASE("ranks (1,1): trivial") {
    auto fw = fiber_weights(make_blocks({{1, 0}, {1, 0}}));
    CHECK(fw.p == C(1));
    CHECK(fw.corrections.empty());
  }
  SUBCASE("ranks (2,2): p = x(1-x), corrections -4/L_j") {
    auto fw = fiber_weights(make_blocks({{2, 0}, {2, 0}}));
    CHECK(fw.p == X() * (C(1) - X()));
    REQUIRE(fw.corrections.size() == 2);
    CHECK(fw.corrections[0].coef == -4);
    CHECK(fw.corrections[1].coef == -4);
    // what * p = w x(1-x) - 4x - 4(1-x) is a polynomial
    WeightExpr what = fw.hat(C(24));
    Polynomial paired = what.pair_with(fw.p);
    CHECK(paired == C(24) * X() * (C(1) - X()) - C(4));
  }
  SUBCASE("ranks (3,1): p = (1-x)^2, correction -12/(1-x)") {
    auto fw = fiber_weights(make_blocks({{3, 0}, {1, 0}}));
    Polynomial l0 = C(1) - X();
    CHECK(fw.p == l0 * l0);
    REQUIRE(fw.corrections.size() == 1);
    CHECK(fw.corrections[0].coef == -12);
    WeightExpr what = fw.hat(C(0));
    CHECK(what.pair_with(fw.p) == l0.scaled(Rational(-12)));
  }
}

TEST_CASE("bundle weights") {
  SUBCASE("worked instance ranks (1,1), degrees (0,1), g=0, c=2") {
    BundleSpec spec{.genus = 0, .blocks = {{1, 0}, {1, 1}}, .c = Rational(2)};
    auto bw = bundle_weights(spec);
    CHECK(bw.pbar == AffineFunction({Rational(-1)}, Rational(2)));  // 2 - x
    CHECK(bw.density == C(2) - X());
    // wbar * density = l_ext (2-x) - 4 once the slot is resolved
    bw.wbar.resolve_extremal(AffineFunction({Rational(0)}, Rational(0)));
    CHECK(bw.wbar.pair_with(bw.density) == C(-4));
  }
  SUBCASE("balanced degrees give a constant pbar") {
    BundleSpec spec{.genus = 1, .blocks = {{1, 0}, {1, 0}}, .c = Rational(1)};
    auto bw = bundle_weights(spec);
    CHECK(bw.pbar == AffineFunction({Rational(0)}, Rational(1)));
  }
  SUBCASE("Kaehler cone violation") {
    BundleSpec spec{.genus = 0, .blocks = {{1, 0}, {1, 3}}, .c = Rational(2)};
    CHECK_THROWS_AS(bundle_weights(spec), KaehlerConeViolation);
  }
}

TEST_CASE("pole cancellation agrees with pointwise evaluation") {
  std::mt19937_64 rng(11);
  auto blocks = make_blocks({{2, 1}, {3, -2}});
  auto fw = fiber_weights(blocks);
  WeightExpr what = fw.hat(C(7, 1) + X().scaled(Rational(2)));
  Polynomial paired = what.pair_with(fw.p);
  for (int k = 0; k < 50; ++k) {
    // random interior rational point of [0,1]
    long num = 1 + static_cast<long>(rng() % 97);
    RatVec x = {Rational(num, 100)};
    CHECK(paired.eval(x) == what.eval_exact(x) * fw.p.eval(x));
  }
  // pairing with a density missing the label factor must fail
  CHECK_THROWS_AS(what.pair_with(C(1)), PoleNotCancelled);
}

TEST_CASE("solve_extremal") {
  auto I = standard_simplex(1);
  SUBCASE("cscK normalization of the segment") {
    auto l = solve_extremal(I, C(1), C(1), C(0));
    CHECK(l.constant == 4);
    CHECK(l.linear[0] == 0);
  }
  SUBCASE("cscK normalization of the triangle: 2d(d-1) = 12") {
    auto T = standard_simplex(2);
    auto l = solve_extremal(T, C(1, 2), C(1, 2), C(0, 2));
    CHECK(l.constant == 12);
    CHECK(l.linear == RatVec{Rational(0), Rational(0)});
  }
  SUBCASE("worked rational instance") {
    auto l = solve_extremal(I, C(2) - X(), C(2) - X(), C(4));
    CHECK(l.constant == Rational(108, 13));
    CHECK(l.linear[0] == Rational(-48, 13));
  }
  SUBCASE("singular measure") {
    CHECK_THROWS_AS(solve_extremal(I, C(0), C(1), C(0)), SingularGram);
  }
}

TEST_CASE("gram matrices are symmetric positive definite") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    int ell = 1 + static_cast<int>(rng() % 2);
    std::vector<std::pair<int, int>> blocks;
    for (int j = 0; j <= ell; ++j)
      blocks.emplace_back(1 + static_cast<int>(rng() % 3),
                          static_cast<int>(rng() % 9) - 4);
    Rational max_slope(-1000);
    for (auto& [r, d] : blocks) max_slope = std::max(max_slope, Rational(d, r));
    BundleSpec spec{.genus = static_cast<int>(rng() % 3), .blocks = blocks,
                    .c = max_slope + Rational(1 + static_cast<int>(rng() % 3), 2)};
    auto bw = bundle_weights(spec);
    auto gram = extremal_gram(standard_simplex(ell), bw.density);
    for (size_t k = 1; k <= gram.size(); ++k) {
      RatMat minor(k, RatVec(k));
      for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) minor[a][b] = gram[a][b];
      CHECK(determinant(minor) > 0);
    }
    for (size_t a = 0; a < gram.size(); ++a)
      for (size_t b = 0; b < a; ++b) CHECK(gram[a][b] == gram[b][a]);
  }
}

TEST_CASE("block swap symmetry") {
  // Exchanging the two blocks of a rank-(2,2) structure corresponds to the
  // simplex involution x -> 1 - x; p and pbar transport to themselves.
  std::vector<AffineFunction> invol = {AffineFunction({Rational(-1)}, Rational(1))};
  auto blocks = make_blocks({{2, 3}, {2, -1}});
  auto swapped = make_blocks({{2, -1}, {2, 3}});
  auto fw = fiber_weights(blocks);
  auto fw_swapped = fiber_weights(swapped);
  CHECK(fw.p.compose_affine(invol) == fw_swapped.p);

  BundleSpec spec{.genus = 0, .blocks = {{2, 3}, {2, -1}}, .c = Rational(9, 4)};
  BundleSpec spec_swapped{.genus = 0, .blocks = {{2, -1}, {2, 3}}, .c = Rational(9, 4)};
  auto bw = bundle_weights(spec);
  auto bw_swapped = bundle_weights(spec_swapped);
  CHECK(Polynomial::from_affine(bw.pbar).compose_affine(invol) ==
        Polynomial::from_affine(bw_swapped.pbar));
  CHECK(bw.density.compose_affine(invol) == bw_swapped.density);
}
