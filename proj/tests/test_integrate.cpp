#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polystab/integrate.hpp"
#include "polystab/log_integrals.hpp"
#include "polystab/quadrature.hpp"

using namespace polystab;

namespace {

AffineFunction aff(std::vector<int> lin, Rational c) {
  RatVec v;
  for (int x : lin) v.push_back(Rational(x));
  return AffineFunction(std::move(v), std::move(c));
}

Polynomial monomial(int dim, std::vector<int> e, Rational c = Rational(1)) {
  Polynomial p(dim);
  p.add_term(e, c);
  return p;
}

}  // namespace

TEST_CASE("interior integrals: closed forms") {
  auto T = standard_simplex(2);
  CHECK(integrate_polynomial(T, Polynomial::constant(2, Rational(1))) == Rational(1, 2));
  CHECK(integrate_polynomial(T, monomial(2, {1, 1})) == Rational(1, 24));

  auto I = standard_simplex(1);
  Polynomial x = Polynomial::coordinate(1, 0);
  Polynomial one = Polynomial::constant(1, Rational(1));
  CHECK(integrate_polynomial(I, x * (one - x)) == Rational(1, 6));

  CHECK_THROWS_AS(integrate_polynomial(I, monomial(2, {1, 0})), DimensionMismatch);
}

TEST_CASE("boundary integrals use the lattice measure, not the euclidean one") {
  auto I = standard_simplex(1);
  CHECK(integrate_boundary(I, Polynomial::constant(1, Rational(1))).total == 2);

  auto T = standard_simplex(2);
  auto bd = integrate_boundary(T, Polynomial::constant(2, Rational(1)));
  CHECK(bd.total == 3);
  for (const auto& facet : bd.per_facet) CHECK(facet == 1);  // slanted edge too

  // 2 int_bd dsigma = 2 d (d-1) Vol for the standard (d-1)-simplex: d = 3
  CHECK(2 * bd.total == 12 * integrate_polynomial(T, Polynomial::constant(2, Rational(1))));
}

TEST_CASE("pl product integrals") {
  auto I = standard_simplex(1);
  auto f = make_pl(I, {affine_const(1, Rational(0)), aff({2}, -1)});
  Polynomial one = Polynomial::constant(1, Rational(1));
  CHECK(integrate_pl_product(I, f, one, Region::Interior) == Rational(1, 4));
  CHECK(integrate_pl_product(I, f, one, Region::Boundary) == 1);

  auto T = standard_simplex(2);
  auto fx = PLConvexFunction({affine_coord(2, 0)});
  CHECK(integrate_pl_product(T, fx, Polynomial::constant(2, Rational(1)), Region::Interior) ==
        integrate_polynomial(T, Polynomial::coordinate(2, 0)));
}

TEST_CASE("l1 norm via sign split") {
  auto I = standard_simplex(1);
  // |2x - 1|: integral 1/2
  auto f = make_pl(I, {aff({2}, -1), aff({-2}, 1)});
  CHECK(integrate_pl_abs(I, f, Polynomial::constant(1, Rational(1))) == Rational(1, 2));
  // f = 2x - 1 (affine, changes sign): same integral
  auto g = PLConvexFunction({aff({2}, -1)});
  CHECK(integrate_pl_abs(I, g, Polynomial::constant(1, Rational(1))) == Rational(1, 2));
}

TEST_CASE("subdivision independence and additivity") {
  auto T = standard_simplex(2);
  Polynomial q = monomial(2, {2, 1}, Rational(3)) + monomial(2, {0, 2});
  Rational direct = integrate_polynomial(T, q);

  // integrate over an arbitrary crease refinement instead
  auto sub = triangulate_with_creases(T, {aff({1, -1}, 0), aff({4, 1}, -1)});
  Rational refined = 0;
  for (const auto& s : sub.simplices) refined += integrate_polynomial_simplex(s, q);
  CHECK(refined == direct);

  // splitting by a rational hyperplane and summing the pieces
  auto left = LabeledPolytope::build({aff({1, 0}, 0), aff({0, 1}, 0), aff({-1, -1}, 1),
                                      AffineFunction({Rational(-3), Rational(1)}, Rational(1))},
                                     {.require_primitive = false, .prune_inactive = true});
  auto right = LabeledPolytope::build({aff({1, 0}, 0), aff({0, 1}, 0), aff({-1, -1}, 1),
                                       AffineFunction({Rational(3), Rational(-1)}, Rational(-1))},
                                      {.require_primitive = false, .prune_inactive = true});
  CHECK(integrate_polynomial(left, q) + integrate_polynomial(right, q) == direct);

  // same property in 3D through the crease machinery
  auto S3 = standard_simplex(3);
  Polynomial q3 = monomial(3, {1, 1, 1}, Rational(5)) + monomial(3, {2, 0, 0});
  Rational whole = integrate_polynomial(S3, q3);
  auto sub3 = triangulate_with_creases(
      S3, {AffineFunction({Rational(2), Rational(-1), Rational(1)}, Rational(-1, 3)),
           AffineFunction({Rational(1), Rational(1), Rational(-2)}, Rational(-1, 5))});
  Rational pieces3 = 0;
  for (const auto& s : sub3.simplices) pieces3 += integrate_polynomial_simplex(s, q3);
  CHECK(pieces3 == whole);
}

TEST_CASE("boundary integrals are invariant under unimodular maps") {
  // x -> U x + t with U = [[1,1],[0,1]], t = (1, -2)
  RatMat uinv = {{Rational(1), Rational(-1)}, {Rational(0), Rational(1)}};
  RatVec tinv = {Rational(-3), Rational(2)};  // inverse map applied to labels
  auto T = standard_simplex(2);
  std::vector<AffineFunction> mapped_labels;
  for (const auto& l : T.labels()) mapped_labels.push_back(l.compose(uinv, tinv));
  auto image = LabeledPolytope::build(mapped_labels);

  Polynomial q = monomial(2, {1, 1}) + Polynomial::constant(2, Rational(2));
  std::vector<AffineFunction> inv_map;  // x as a function of y, for pullback
  inv_map.push_back(AffineFunction({Rational(1), Rational(-1)}, Rational(-3)));
  inv_map.push_back(AffineFunction({Rational(0), Rational(1)}, Rational(2)));
  Polynomial q_image = q.compose_affine(inv_map);

  CHECK(integrate_boundary(T, q).total == integrate_boundary(image, q_image).total);
  CHECK(integrate_polynomial(T, q) == integrate_polynomial(image, q_image));
}

TEST_CASE("stokes identity ties dsigma to the interior measure") {
  // For a constant field xi:  int grad_xi q dx = - sum_i <p_i, xi> int_{F_i} q dsigma.
  // This pins the lattice normalization of every facet chart independently
  // of how the facets were parametrized.
  auto stokes = [](const LabeledPolytope& p, const Polynomial& q) {
    for (int k = 0; k < p.dim(); ++k) {
      Rational lhs = integrate_polynomial(p, q.derivative(k));
      Rational rhs = 0;
      for (size_t i = 0; i < p.labels().size(); ++i)
        rhs -= p.labels()[i].linear[k] * integrate_facet(p, static_cast<int>(i), q);
      CHECK(lhs == rhs);
    }
  };
  Polynomial q2 = monomial(2, {2, 1}, Rational(3)) + monomial(2, {1, 0}) +
                  Polynomial::constant(2, Rational(1, 2));
  stokes(standard_simplex(2), q2);
  // pentagon from a Donaldson construction
  auto pentagon = LabeledPolytope::build({aff({1, 0}, 0), aff({-1, 0}, 1),
                                          aff({0, 1}, 0), aff({0, -1}, 1),
                                          aff({-1, -1}, Rational(3, 2))});
  stokes(pentagon, q2);
  // a 4-dimensional simplex in nonstandard position
  RatMat uinv = {{Rational(1), Rational(0), Rational(1), Rational(-1)},
                 {Rational(0), Rational(1), Rational(0), Rational(2)},
                 {Rational(0), Rational(0), Rational(1), Rational(0)},
                 {Rational(0), Rational(0), Rational(0), Rational(1)}};
  LabeledPolytope s4 = standard_simplex(4);
  std::vector<AffineFunction> labels;
  for (const auto& l : s4.labels())
    labels.push_back(l.compose(uinv, RatVec(4, Rational(0))));
  auto skew = LabeledPolytope::build(labels);
  Polynomial q4 = monomial(4, {1, 1, 0, 1}) + monomial(4, {0, 2, 0, 0});
  stokes(skew, q4);
}

TEST_CASE("quad_adaptive against the exact integrator") {
  auto T = standard_simplex(2);
  auto r = quad_adaptive(T, [](const std::vector<double>&) { return 1.0; }, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-10));

  Polynomial q = monomial(2, {1, 1});
  CompiledPolynomial qc(q);
  auto r2 = quad_adaptive(T, [&](const std::vector<double>& x) { return qc.eval(x); }, 1e-8);
  CHECK(r2.value == doctest::Approx(to_double(integrate_polynomial(T, q))).epsilon(1e-8));

  // log singular at both endpoints, exact value -2 + 2 log 2
  auto I = standard_simplex(1);
  auto r3 = quad_adaptive(
      I, [](const std::vector<double>& x) { return std::log(x[0] * (1 - x[0])) + std::log(4.0); },
      1e-6);
  CHECK(r3.converged);
  CHECK(r3.value == doctest::Approx(-2 + 2 * std::log(2.0)).epsilon(1e-5));

  // random polynomials, degree <= 6, dims 1..4 (small sample; the full
  // 100-instance battery runs in the acceptance suite)
  std::mt19937_64 rng(7);
  for (int k = 0; k < 12; ++k) {
    int dim = 1 + static_cast<int>(rng() % 4);
    Polynomial p(dim);
    for (int t = 0; t < 4; ++t) {
      std::vector<int> e(dim, 0);
      int deg = static_cast<int>(rng() % 7);
      for (int d = 0; d < deg; ++d) e[rng() % dim] += 1;
      p.add_term(e, Rational(static_cast<long>(rng() % 9) - 4));
    }
    auto S = standard_simplex(dim);
    Rational exact = integrate_polynomial(S, p);
    CompiledPolynomial pc(p);
    auto rr = quad_adaptive(S, [&](const std::vector<double>& x) { return pc.eval(x); }, 1e-8);
    CHECK(std::abs(rr.value - to_double(exact)) <=
          1e-8 * std::max(1.0, std::abs(to_double(exact))));
  }
}

TEST_CASE("evaluator failures surface with the documented error") {
  auto I = standard_simplex(1);
  CHECK_THROWS_AS(
      quad_adaptive(I, [](const std::vector<double>&) -> double {
        throw std::runtime_error("boom");
      }, 1e-6),
      EvaluatorFailure);
  // NaN near the boundary recovers by pulling nodes toward the centroid
  auto r = quad_adaptive(
      I,
      [](const std::vector<double>& x) {
        return x[0] < 0.15 ? std::nan("") : 1.0;
      },
      1e-1, {.max_cells = 4, .max_shrink = 40});
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));

  // an unreachable tolerance returns the best value with converged = false
  auto hard = quad_adaptive(
      I,
      [](const std::vector<double>& x) {
        return std::sqrt(std::fabs(x[0] - 0.707106781186547));  // kink
      },
      1e-14, {.max_cells = 8, .max_shrink = 10});
  CHECK(!hard.converged);
  CHECK(hard.error_estimate > 0);
}

TEST_CASE("exact log integrals") {
  // int_0^1 x^k log x dx = -1/(k+1)^2
  for (int k = 0; k <= 5; ++k) {
    Polynomial xk = monomial(1, {k});
    CHECK(integrate_log_subset(xk, {1}) == -Rational(1, (k + 1) * (k + 1)));
  }
  // symmetric label
  CHECK(integrate_log_subset(Polynomial::constant(1, Rational(1)), {0}) == -1);
  // subset sums: int_{2-simplex} log(x1 + x2) = -1/4
  CHECK(integrate_log_subset(Polynomial::constant(2, Rational(1)), {1, 2}) == Rational(-1, 4));
  // full subset: log 1 = 0
  CHECK(integrate_log_subset(Polynomial::constant(2, Rational(1)), {0, 1, 2}) == 0);

  // facet restriction: int over {x1 = 0} of log(x2) on the 2-simplex
  CHECK(integrate_log_subset_facet(Polynomial::constant(2, Rational(1)), {2}, 1) == -1);

  // cross-check a nontrivial instance against quadrature
  Polynomial q = monomial(2, {1, 0}) + Polynomial::constant(2, Rational(1));
  Rational exact = integrate_log_subset(q, {0, 2});
  AffineFunction s = subset_affine(2, {0, 2});
  CompiledPolynomial qc(q);
  auto T = standard_simplex(2);
  auto r = quad_adaptive(
      T,
      [&](const std::vector<double>& x) {
        double sv = to_double(s.constant);
        for (size_t i = 0; i < x.size(); ++i) sv += to_double(s.linear[i]) * x[i];
        return qc.eval(x) * std::log(sv);
      },
      1e-8);
  CHECK(r.value == doctest::Approx(to_double(exact)).epsilon(1e-6));
}

TEST_CASE("guillemin futaki values via the log algebra") {
  LogLinComb g1 = guillemin_log_comb(1);
  // boundary values vanish, interior integral of u0 is -1/4
  CHECK(futaki_log_comb(g1, Polynomial::constant(1, Rational(0)),
                        Polynomial::constant(1, Rational(1))) == Rational(1, 4));
  CHECK(futaki_log_comb(g1, Polynomial::constant(1, Rational(1)),
                        Polynomial::constant(1, Rational(0))) == 0);
}
