#include "polystab/fibration.hpp"

namespace polystab {

FiberModel FiberModel::build(const std::vector<BlockData>& blocks) {
  FiberModel m;
  m.blocks_ = blocks;
  m.ell_ = static_cast<int>(blocks.size()) - 1;
  int total_rank = 0;
  for (const auto& b : blocks) total_rank += b.rank;
  m.n_ = total_rank - 1;
  m.delta_ = standard_simplex(m.ell_);

  m.fiber_offset_.assign(m.ell_ + 1, -1);
  int at = m.ell_;
  for (int j = 0; j <= m.ell_; ++j) {
    if (blocks[j].rank >= 2) {
      m.fiber_offset_[j] = at;
      at += blocks[j].rank - 1;
    }
  }

  const int n = m.n_;
  std::vector<AffineFunction> labels;
  for (int j = 0; j <= m.ell_; ++j) {
    const int dj = blocks[j].rank;
    for (int i = 0; i < dj; ++i) {
      RatVec lin(n, Rational(0));
      Rational cst(0);
      if (i == 0) {
        if (j == 0) {
          for (int k = 0; k < m.ell_; ++k) lin[k] = -1;
          cst = 1;
        } else {
          lin[j - 1] = 1;
        }
        if (dj >= 2)
          for (int q = 0; q < dj - 1; ++q) lin[m.fiber_offset_[j] + q] = -1;
      } else {
        lin[m.fiber_offset_[j] + i - 1] = 1;
      }
      labels.emplace_back(std::move(lin), cst);
      m.label_blocks_.emplace_back(j, i);
    }
  }
  m.delta_hat_ = LabeledPolytope::build(std::move(labels));

  FiberWeights fw = fiber_weights(blocks);
  m.p_ = fw.p;
  m.vol_delta_b_ = 1;
  for (const auto& b : blocks)
    if (b.rank >= 2) m.vol_delta_b_ /= factorial(b.rank - 1);
  return m;
}

int FiberModel::hat_label_index(int j, int i) const {
  for (size_t k = 0; k < label_blocks_.size(); ++k)
    if (label_blocks_[k] == std::make_pair(j, i)) return static_cast<int>(k);
  throw std::invalid_argument("no such block facet");
}

std::pair<int, int> FiberModel::hat_label_block(int index) const {
  return label_blocks_.at(index);
}

PLConvexFunction FiberModel::pullback(const PLConvexFunction& f) const {
  std::vector<AffineFunction> pieces;
  for (const auto& piece : f.pieces()) {
    RatVec lin(n_, Rational(0));
    for (int k = 0; k < ell_; ++k) lin[k] = piece.linear[k];
    pieces.emplace_back(std::move(lin), piece.constant);
  }
  return PLConvexFunction(std::move(pieces));
}

Polynomial FiberModel::pullback(const Polynomial& q) const {
  std::vector<AffineFunction> subs;
  for (int k = 0; k < ell_; ++k) subs.push_back(affine_coord(n_, k));
  return q.compose_affine(subs);
}

std::vector<AffineFunction> FiberModel::to_standard_map() const {
  // xhat coordinates as affine functions of y: x_k = y_k + sum_i yhat^k_i,
  // fiber coordinates pass through.
  std::vector<AffineFunction> subs;
  for (int k = 0; k < ell_; ++k) {
    RatVec lin(n_, Rational(0));
    lin[k] = 1;
    if (fiber_offset_[k + 1] >= 0)
      for (int q = 0; q < blocks_[k + 1].rank - 1; ++q)
        lin[fiber_offset_[k + 1] + q] = 1;
    subs.emplace_back(std::move(lin), Rational(0));
  }
  for (int c = ell_; c < n_; ++c) subs.push_back(affine_coord(n_, c));
  return subs;
}

std::vector<AffineFunction> FiberModel::from_standard_map() const {
  // y coordinates as affine functions of xhat.
  std::vector<AffineFunction> subs;
  for (int k = 0; k < ell_; ++k) {
    RatVec lin(n_, Rational(0));
    lin[k] = 1;
    if (fiber_offset_[k + 1] >= 0)
      for (int q = 0; q < blocks_[k + 1].rank - 1; ++q)
        lin[fiber_offset_[k + 1] + q] = -1;
    subs.emplace_back(std::move(lin), Rational(0));
  }
  for (int c = ell_; c < n_; ++c) subs.push_back(affine_coord(n_, c));
  return subs;
}

int FiberModel::standard_label_of(int j, int i) const {
  if (i == 0) return j == 0 ? 0 : j;
  return fiber_offset_[j] + i - 1 + 1;  // coordinate index -> label index
}

std::vector<int> FiberModel::standard_subset_of_block(int j) const {
  std::vector<int> subset;
  for (int i = 0; i < blocks_[j].rank; ++i) subset.push_back(standard_label_of(j, i));
  return subset;
}

Rational FiberModel::delta_b_facet_sigma(int j) const {
  if (blocks_[j].rank < 2)
    throw std::invalid_argument("rank-one block has no Delta_B facet");
  Rational sigma = Rational(1) / factorial(blocks_[j].rank - 2);
  for (const auto& b : blocks_)
    if (b.index != j && b.rank >= 2) sigma /= factorial(b.rank - 1);
  return sigma;
}

bool IdentityReport::all_zero() const {
  if (pullback.difference() != 0) return false;
  for (const auto& c : boundary)
    if (c.difference() != 0) return false;
  return futaki_transfer.difference() == 0;
}

IdentityReport verify_identities(const FiberModel& model, const PLConvexFunction& f,
                                 const Polynomial& v, const WeightExpr& w) {
  if (f.dim() != model.ell() || v.dim() != model.ell())
    throw PullbackNotConstantAlongFibers(
        "f and v must be functions on the base simplex");
  if (w.has_poles() || w.opaque)
    throw PoleNotCancelled("transfer battery takes a smooth (polynomial) w");

  const LabeledPolytope& delta = model.delta();
  const LabeledPolytope& hat = model.delta_hat();
  PLConvexFunction fh = model.pullback(f);
  Polynomial vh = model.pullback(v);

  IdentityReport report;

  report.pullback.name = "pullback";
  report.pullback.lhs = integrate_pl_product(hat, fh, vh, Region::Interior);
  report.pullback.rhs =
      model.vol_delta_b() *
      integrate_pl_product(delta, f, model.p() * v, Region::Interior);

  for (size_t c = 0; c < hat.labels().size(); ++c) {
    auto [j, i] = model.hat_label_block(static_cast<int>(c));
    IdentityCheck check;
    check.name = "boundary(" + std::to_string(j) + "," + std::to_string(i) + ")";
    check.lhs = integrate_pl_product_facet(hat, static_cast<int>(c), fh, vh);
    if (model.blocks()[j].rank >= 2) {
      auto p_over_l = model.p().divide_by_affine(model.blocks()[j].label);
      if (!p_over_l) throw PoleNotCancelled("p lacks the block label factor");
      check.rhs = model.delta_b_facet_sigma(j) *
                  integrate_pl_product(delta, f, *p_over_l * v, Region::Interior);
    } else {
      int base_facet = j;  // delta label order matches block labels
      check.rhs = model.vol_delta_b() *
                  integrate_pl_product_facet(delta, base_facet, f, model.p() * v);
    }
    report.boundary.push_back(std::move(check));
  }

  report.futaki_transfer.name = "futaki";
  Polynomial wpoly = w.polynomial_part();
  report.futaki_transfer.lhs =
      2 * integrate_pl_product(hat, fh, vh, Region::Boundary) -
      integrate_pl_product(hat, fh, model.pullback(wpoly) * vh, Region::Interior);
  FiberWeights fw = fiber_weights(model.blocks());
  report.futaki_transfer.rhs =
      model.vol_delta_b() * futaki(delta, model.p() * v, fw.hat(wpoly), f);
  return report;
}

Rational BundleProblem::futaki_of(const PLConvexFunction& f) const {
  return futaki(delta, weights.density, weights.wbar, f);
}

FunctionalValue BundleProblem::df_of(const PLConvexFunction& f) const {
  FunctionalValue out = bundle_df_multiplier;
  out.rational_part *= futaki_of(f);
  return out;
}

BundleProblem bundle_problem(const BundleSpec& spec) {
  BundleProblem problem;
  problem.spec = spec;
  problem.weights = bundle_weights(spec);
  problem.delta = standard_simplex(spec.ell());

  // Extremal system: move the pole corrections of wbar to the right-hand
  // side, where they cancel against the density factors exactly.
  const Polynomial& density = problem.weights.density;
  const Polynomial& p = problem.weights.p;
  Polynomial rhs_interior(spec.ell());
  Polynomial pbar_poly = Polynomial::from_affine(problem.weights.pbar);
  for (const auto& b : problem.weights.block_data) {
    if (b.rank < 2) continue;
    auto p_over_l = p.divide_by_affine(b.label);
    if (!p_over_l) throw PoleNotCancelled("p lacks the block label factor");
    rhs_interior =
        rhs_interior + (*p_over_l * pbar_poly).scaled(Rational(2 * b.rank * (b.rank - 1)));
  }
  rhs_interior = rhs_interior + p.scaled(Rational(4 * (1 - spec.genus)));

  problem.l_ext = solve_extremal(problem.delta, density, density, rhs_interior);
  problem.weights.wbar.resolve_extremal(problem.l_ext);

  int n = spec.n();
  problem.fiber_df_multiplier = {Rational(1), n + 1};
  for (const auto& b : problem.weights.block_data)
    if (b.rank >= 2) problem.fiber_df_multiplier.rational_part /= factorial(b.rank - 1);
  problem.bundle_df_multiplier = problem.fiber_df_multiplier;
  problem.bundle_df_multiplier.rational_part *= spec.base_volume.coefficient;
  problem.bundle_df_multiplier.two_pi_power += spec.base_volume.power;

  problem.j_lower_factor = problem.weights.pbar.eval(problem.delta.vertices()[0]);
  for (const auto& vert : problem.delta.vertices())
    problem.j_lower_factor = std::min(problem.j_lower_factor,
                                      problem.weights.pbar.eval(vert));
  return problem;
}

}  // namespace polystab
