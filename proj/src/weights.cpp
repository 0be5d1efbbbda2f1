#include "polystab/weights.hpp"

#include <cmath>

namespace polystab {

std::vector<BlockData> make_blocks(const std::vector<std::pair<int, int>>& rank_degree) {
  const int ell = static_cast<int>(rank_degree.size()) - 1;
  if (ell < 1) throw std::invalid_argument("need at least two blocks");
  std::vector<BlockData> blocks;
  for (int j = 0; j <= ell; ++j) {
    BlockData b;
    b.index = j;
    b.rank = rank_degree[j].first;
    b.degree = rank_degree[j].second;
    if (b.rank < 1) throw std::invalid_argument("block rank must be positive");
    b.label = j == 0 ? AffineFunction(RatVec(ell, Rational(-1)), Rational(1))
                     : affine_coord(ell, j - 1);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

WeightExpr WeightExpr::from_polynomial(Polynomial p) {
  WeightExpr w(p.dim());
  w.poly = std::move(p);
  return w;
}

WeightExpr WeightExpr::from_constant(int dim, const Rational& c) {
  return from_polynomial(Polynomial::constant(dim, c));
}

void WeightExpr::resolve_extremal(const AffineFunction& l_ext) {
  if (!has_extremal_slot) throw Error("weight has no extremal slot");
  extremal = l_ext;
}

Polynomial WeightExpr::polynomial_part() const {
  Polynomial p = poly;
  if (has_extremal_slot) {
    if (!extremal) throw Error("extremal slot unresolved");
    p = p + Polynomial::from_affine(*extremal);
  }
  return p;
}

Polynomial WeightExpr::pair_with(const Polynomial& density) const {
  if (!resolved()) throw Error("extremal slot unresolved");
  if (opaque) throw PoleNotCancelled("opaque weight cannot be paired exactly");
  Polynomial out = polynomial_part() * density;
  for (const auto& pole : poles) {
    auto quotient = density.divide_by_affine(pole.denom);
    if (!quotient)
      throw PoleNotCancelled("pole denominator does not divide the density");
    out = out + quotient->scaled(pole.coef);
  }
  return out;
}

double WeightExpr::eval(const std::vector<double>& x) const {
  double v = poly.eval(x);
  if (has_extremal_slot && extremal) v += extremal->eval(x);
  for (const auto& pole : poles) v += to_double(pole.coef) / pole.denom.eval(x);
  if (opaque) v += opaque(x);
  return v;
}

Rational WeightExpr::eval_exact(const RatVec& x) const {
  if (opaque) throw Error("opaque weight has no exact value");
  Rational v = polynomial_part().eval(x);
  for (const auto& pole : poles) {
    Rational d = pole.denom.eval(x);
    if (d == 0) throw PoleNotCancelled("weight pole hit at evaluation point");
    v += pole.coef / d;
  }
  return v;
}

WeightExpr FiberWeights::hat(const Polynomial& w) const {
  WeightExpr out = WeightExpr::from_polynomial(w);
  out.poles = corrections;
  return out;
}

FiberWeights fiber_weights(const std::vector<BlockData>& blocks) {
  const int ell = static_cast<int>(blocks.size()) - 1;
  FiberWeights fw;
  fw.p = Polynomial::constant(ell, Rational(1));
  for (const auto& b : blocks) {
    fw.p = fw.p * Polynomial::from_affine(b.label).pow(b.rank - 1);
    if (b.rank >= 2)
      fw.corrections.push_back({Rational(-2 * b.rank * (b.rank - 1)), b.label});
  }
  return fw;
}

double TwoPiTag::value() const {
  return to_double(coefficient) * std::pow(2.0 * M_PI, power);
}

int BundleSpec::n() const {
  int s = 0;
  for (const auto& [rank, deg] : blocks) s += rank;
  return s - 1;
}

void BundleSpec::validate() const {
  if (ell() < 1) throw std::invalid_argument("need at least two blocks");
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  for (const auto& [rank, deg] : blocks) {
    if (rank < 1) throw std::invalid_argument("block rank must be positive");
    if (c <= Rational(deg) / Rational(rank))
      throw KaehlerConeViolation("c must exceed every block slope");
  }
}

BundleWeights bundle_weights(const BundleSpec& spec) {
  spec.validate();
  BundleWeights bw;
  bw.block_data = make_blocks(spec.blocks);
  const int ell = spec.ell();

  FiberWeights fw = fiber_weights(bw.block_data);
  bw.p = fw.p;

  bw.pbar = affine_const(ell, spec.c);
  for (const auto& b : bw.block_data)
    bw.pbar = bw.pbar - b.label.scaled(b.slope());

  bw.density = bw.p * Polynomial::from_affine(bw.pbar);

  WeightExpr wbar(ell);
  wbar.has_extremal_slot = true;
  wbar.poles = fw.corrections;
  wbar.poles.push_back({Rational(-4 * (1 - spec.genus)), bw.pbar});
  bw.wbar = std::move(wbar);
  return bw;
}

RatMat extremal_gram(const LabeledPolytope& p, const Polynomial& measure) {
  const int ell = p.dim();
  std::vector<Polynomial> basis;
  basis.push_back(Polynomial::constant(ell, Rational(1)));
  for (int k = 0; k < ell; ++k) basis.push_back(Polynomial::coordinate(ell, k));
  RatMat gram(ell + 1, RatVec(ell + 1));
  for (int a = 0; a <= ell; ++a)
    for (int b = a; b <= ell; ++b) {
      gram[a][b] = integrate_polynomial(p, basis[a] * basis[b] * measure);
      gram[b][a] = gram[a][b];
    }
  return gram;
}

AffineFunction solve_extremal(const LabeledPolytope& p, const Polynomial& measure,
                              const Polynomial& rhs_boundary,
                              const Polynomial& rhs_interior) {
  const int ell = p.dim();
  std::vector<Polynomial> basis;
  basis.push_back(Polynomial::constant(ell, Rational(1)));
  for (int k = 0; k < ell; ++k) basis.push_back(Polynomial::coordinate(ell, k));

  RatMat gram = extremal_gram(p, measure);
  RatVec rhs(ell + 1);
  for (int a = 0; a <= ell; ++a)
    rhs[a] = 2 * integrate_boundary(p, basis[a] * rhs_boundary).total +
             integrate_polynomial(p, basis[a] * rhs_interior);

  auto sol = solve_linear(gram, rhs);
  if (!sol) throw SingularGram("degenerate measure in extremal system");
  RatVec linear(sol->begin() + 1, sol->end());
  return AffineFunction(std::move(linear), (*sol)[0]);
}

}  // namespace polystab
