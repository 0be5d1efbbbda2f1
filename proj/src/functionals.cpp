#include "polystab/functionals.hpp"

#include <cmath>

#include "polystab/lp.hpp"
#include "polystab/quadrature.hpp"

namespace polystab {

Rational futaki(const LabeledPolytope& p, const Polynomial& v_density,
                const WeightExpr& w, const PLConvexFunction& f) {
  Polynomial wv = w.pair_with(v_density);
  Rational boundary = integrate_pl_product(p, f, v_density, Region::Boundary);
  Rational interior = integrate_pl_product(p, f, wv, Region::Interior);
  return 2 * boundary - interior;
}

Rational futaki(const LabeledPolytope& p, const WeightExpr& v, const WeightExpr& w,
                const PLConvexFunction& f) {
  if (v.has_poles() || v.opaque)
    throw PoleNotCancelled("density weight must be pole-free");
  return futaki(p, v.polynomial_part(), w, f);
}

ApproxValue futaki_numeric(const LabeledPolytope& p, const WeightExpr& v,
                           const WeightExpr& w, const PLConvexFunction& f,
                           double rel_tol) {
  const int d = p.dim();
  ApproxValue out;

  QuadResult interior = quad_adaptive(
      p,
      [&](const std::vector<double>& x) {
        return f.eval(x) * w.eval(x) * v.eval(x);
      },
      rel_tol);
  out.value = -interior.value;
  out.error = interior.error_estimate;
  out.converged = interior.converged;

  // Boundary term through per-facet charts: each facet simplex maps the
  // standard (d-1)-simplex with dsigma mass sigma * (d-1)!.
  for (size_t i = 0; i < p.labels().size(); ++i) {
    auto simplices = triangulate_facet_with_creases(p, static_cast<int>(i), {});
    for (const auto& s : simplices) {
      Rational sigma = facet_simplex_sigma(s, p.labels()[i]);
      auto at = [&](const std::vector<double>& lambda) {
        std::vector<double> x(d);
        for (int c = 0; c < d; ++c) {
          x[c] = to_double(s[0][c]);
          for (size_t k = 1; k < s.size(); ++k)
            x[c] += lambda[k - 1] * to_double(s[k][c] - s[0][c]);
        }
        return x;
      };
      double scale = 2.0 * to_double(sigma * factorial(d - 1));
      if (d == 1) {
        std::vector<double> x = {to_double(s[0][0])};
        out.value += scale * f.eval(x) * v.eval(x);
        continue;
      }
      std::vector<std::vector<double>> chart_simplex;
      for (int k = 0; k < d; ++k) {
        std::vector<double> corner(d - 1, 0.0);
        if (k > 0) corner[k - 1] = 1.0;
        chart_simplex.push_back(std::move(corner));
      }
      QuadResult fr = quad_adaptive_simplices(
          {chart_simplex},
          [&](const std::vector<double>& lambda) {
            std::vector<double> x = at(lambda);
            return f.eval(x) * v.eval(x);
          },
          rel_tol);
      out.value += scale * fr.value;
      out.error += scale * fr.error_estimate;
      out.converged = out.converged && fr.converged;
    }
  }
  return out;
}

Rational fplus(const LabeledPolytope& p, const Polynomial& density,
               const std::vector<BlockData>& blocks, const PLConvexFunction& f) {
  Rational total = 2 * integrate_pl_product(p, f, density, Region::Boundary);
  for (const auto& b : blocks) {
    if (b.rank < 2) continue;
    auto quotient = density.divide_by_affine(b.label);
    if (!quotient)
      throw PoleNotCancelled("density lacks the block label factor");
    total += integrate_pl_product(
        p, f, quotient->scaled(Rational(2 * b.rank * (b.rank - 1))), Region::Interior);
  }
  return total;
}

NormalizedPL normalize_star(const LabeledPolytope& p, const PLConvexFunction& f,
                            const RatVec& x0) {
  if (!p.is_interior(x0))
    throw BasePointOnBoundary("normalization base point must be interior");
  // Subgradient at x0: gradient of an active piece; lexicographically
  // smallest on ties.
  Rational fx0 = f.eval(x0);
  const AffineFunction* chosen = nullptr;
  for (const auto& piece : f.pieces()) {
    if (piece.eval(x0) != fx0) continue;
    if (!chosen || piece.linear < chosen->linear) chosen = &piece;
  }
  AffineFunction tangent(chosen->linear, fx0 - dot(chosen->linear, x0));
  NormalizedPL out;
  out.base_point = x0;
  out.removed_affine = tangent;
  out.f_star = f.shifted(-tangent);
  return out;
}

Rational l1_norm(const LabeledPolytope& p, const Polynomial& v, const PLConvexFunction& f) {
  return integrate_pl_abs(p, f, v);
}

Rational j_norm(const LabeledPolytope& p, const Polynomial& v, const PLConvexFunction& f) {
  const int ell = p.dim();
  std::vector<RatVec> nodes = crease_subdivision_vertices(p, f);

  // Variables: beta (linear xi coefficients, split +-), t (split +-).
  // min  int f v + sum beta_a int x_a v - t int v
  // s.t. t - <beta, z> <= f(z) for every subdivision vertex z.
  const int nv = 2 * ell + 2;
  LinearProgram lp(nv);
  RatVec obj(nv, Rational(0));
  for (int a = 0; a < ell; ++a) {
    Rational m = integrate_polynomial(p, Polynomial::coordinate(ell, a) * v);
    obj[a] = m;
    obj[ell + a] = -m;
  }
  Rational mass = integrate_polynomial(p, v);
  obj[2 * ell] = -mass;
  obj[2 * ell + 1] = mass;
  lp.set_objective(obj);

  for (const auto& z : nodes) {
    RatVec row(nv, Rational(0));
    for (int a = 0; a < ell; ++a) {
      row[a] = -z[a];
      row[ell + a] = z[a];
    }
    row[2 * ell] = 1;
    row[2 * ell + 1] = -1;
    lp.add_constraint(row, Relation::LE, f.eval(z));
  }

  LpResult res = lp.solve();
  if (res.status == LpStatus::Unbounded)
    throw LPUnbounded("degenerate weight in J-norm");
  if (res.status != LpStatus::Optimal)
    throw Error("internal: J-norm LP infeasible");
  return res.objective + integrate_pl_product(p, f, v, Region::Interior);
}

double FunctionalValue::float_view() const {
  return to_double(rational_part) * std::pow(2.0 * M_PI, two_pi_power);
}

FunctionalValue na_convert(const Rational& value, NaKind kind, NaQuantity quantity,
                           int n, const Rational& volume, const Rational& vol_delta_b) {
  if (volume <= 0 || vol_delta_b <= 0)
    throw std::invalid_argument("volumes must be positive");
  FunctionalValue out;
  out.two_pi_power = n + 1;
  out.rational_part = value;
  if (quantity == NaQuantity::JNorm) out.rational_part /= volume;
  if (kind == NaKind::Compatible) out.rational_part *= vol_delta_b;
  return out;
}

}  // namespace polystab
