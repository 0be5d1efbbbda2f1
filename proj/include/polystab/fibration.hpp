#pragma once

#include "polystab/functionals.hpp"
#include "polystab/log_integrals.hpp"
#include "polystab/weights.hpp"

namespace polystab {

/// The polytope data of the blow-down fibration: the base simplex Delta,
/// the total-space simplex Delta_hat in block moment coordinates
/// (x, xhat^j_i) with xhat^j_i = x^j_i L_j(x), the product factor Delta_B,
/// and the coordinate projection pi : Delta_hat -> Delta.
class FiberModel {
 public:
  static FiberModel build(const std::vector<BlockData>& blocks);

  const std::vector<BlockData>& blocks() const { return blocks_; }
  int ell() const { return ell_; }
  int n() const { return n_; }
  const LabeledPolytope& delta() const { return delta_; }
  const LabeledPolytope& delta_hat() const { return delta_hat_; }
  const Polynomial& p() const { return p_; }
  const Rational& vol_delta_b() const { return vol_delta_b_; }

  /// Label index in delta_hat for the block facet (j, i).
  int hat_label_index(int j, int i) const;
  /// (j, i) for a delta_hat label index.
  std::pair<int, int> hat_label_block(int index) const;

  /// Pullbacks through the coordinate projection.
  PLConvexFunction pullback(const PLConvexFunction& f) const;
  Polynomial pullback(const Polynomial& q) const;

  /// Unimodular change to coordinates in which Delta_hat is the standard
  /// n-simplex (y_k = x_k - sum_i xhat^k_i). Returns the label permutation:
  /// standard-label index of the (j, i) facet.
  std::vector<AffineFunction> to_standard_map() const;   // xhat in terms of y
  std::vector<AffineFunction> from_standard_map() const; // y in terms of xhat
  int standard_label_of(int j, int i) const;
  /// Standard-label subset realizing L_j as a sum of Delta_hat labels.
  std::vector<int> standard_subset_of_block(int j) const;

  /// dsigma mass of the Delta_B facet indexed by (j, i), for d_j >= 2.
  Rational delta_b_facet_sigma(int j) const;

 private:
  std::vector<BlockData> blocks_;
  int ell_ = 0, n_ = 0;
  LabeledPolytope delta_, delta_hat_;
  Polynomial p_{0};
  Rational vol_delta_b_{1};
  std::vector<std::pair<int, int>> label_blocks_;  // per delta_hat label
  std::vector<int> fiber_offset_;                  // coord start per block, -1 if rank 1
};

struct IdentityCheck {
  std::string name;
  Rational lhs{0}, rhs{0};
  Rational difference() const { return lhs - rhs; }
};

struct IdentityReport {
  IdentityCheck pullback;
  std::vector<IdentityCheck> boundary;  // one per delta_hat facet
  IdentityCheck futaki_transfer;
  bool all_zero() const;
};

/// The three exact transfer identities: the pullback integral, the
/// per-facet boundary measure decomposition, and the Futaki transfer
/// F^{hat}_{v,w}(pi* f) = Vol(Delta_B) F^{Delta}_{pv, what}(f).
/// The hat side is integrated directly on Delta_hat, independent of the
/// base-side weight algebra.
IdentityReport verify_identities(const FiberModel& model, const PLConvexFunction& f,
                                 const Polynomial& v, const WeightExpr& w);

/// Fully assembled bundle stability problem on the base simplex.
struct BundleProblem {
  BundleSpec spec;
  LabeledPolytope delta;
  BundleWeights weights;   // density = p pbar, wbar resolved
  AffineFunction l_ext;
  FunctionalValue fiber_df_multiplier;   // (2pi)^{n+1} Vol(Delta_B)
  FunctionalValue bundle_df_multiplier;  // Vol(C) (2pi)^{n+1} Vol(Delta_B)
  Rational j_lower_factor{0};            // inf_Delta pbar

  Rational futaki_of(const PLConvexFunction& f) const;
  FunctionalValue df_of(const PLConvexFunction& f) const;
};

BundleProblem bundle_problem(const BundleSpec& spec);

}  // namespace polystab
