#pragma once

#include <Eigen/Dense>

#include "polystab/fibration.hpp"
#include "polystab/log_integrals.hpp"
#include "polystab/quadrature.hpp"

namespace polystab {

/// Symplectic potential u = u_0 + phi on a labeled polytope, with u_0 the
/// Guillemin potential (1/2) sum L_i log L_i and phi polynomial.
struct SymplecticPotential {
  LabeledPolytope polytope;
  Polynomial phi;

  static SymplecticPotential guillemin(LabeledPolytope p);

  double value(const std::vector<double>& x) const;
  /// Closed-form Hessians: Hess u_0 = (1/2) sum p_i p_i^T / L_i.
  Eigen::MatrixXd hess_u0(const std::vector<double>& x) const;
  Eigen::MatrixXd hess_phi(const std::vector<double>& x) const;
  Eigen::MatrixXd hess(const std::vector<double>& x) const;
  /// Exact Hessian at a rational interior point.
  RatMat hess_exact(const RatVec& x) const;

  /// Positive definiteness of Hess u at the interior points of a principal
  /// grid, exact (leading principal minors). Throws NotConvex on failure.
  void check_convex(int grid_n) const;
};

/// Entropy + linear decomposition of the weighted Mabuchi energy.
struct MabuchiValue {
  double entropy = 0;
  double entropy_error = 0;
  Rational linear{0};
  bool converged = true;
  double total() const { return entropy + to_double(linear); }
};

/// M_{pv, what}(u) = -int log det(Hess u Hess u_0^{-1}) pv dx + F_{pv,what}(u),
/// entropy by adaptive quadrature, linear term exact (the Guillemin L log L
/// integrals are rational on the standard simplex).
MabuchiValue mabuchi_energy(const SymplecticPotential& u, const Polynomial& pv,
                            const WeightExpr& what, double rel_tol);

/// Compatible lift u_hat = u + sum_{d_j >= 2} L_j u_j on Delta_hat, in the
/// block moment chart.
class CompatibleLift {
 public:
  CompatibleLift(const FiberModel& model, SymplecticPotential u,
                 std::vector<SymplecticPotential> fiber_potentials);

  const FiberModel& model() const { return *model_; }
  const SymplecticPotential& base() const { return u_; }
  const std::vector<SymplecticPotential>& fibers() const { return fibers_; }

  double value(const std::vector<double>& xhat) const;
  /// Block-arrow chain-rule Hessian in the hat coordinates.
  Eigen::MatrixXd hess(const std::vector<double>& xhat) const;

  /// Fiber coordinates s^j = xhat^j / L_j(x) of a hat point.
  std::vector<std::vector<double>> fiber_coords(const std::vector<double>& xhat) const;

 private:
  const FiberModel* model_;
  SymplecticPotential u_;
  std::vector<SymplecticPotential> fibers_;  // one per block with rank >= 2
};

struct DetCheckSample {
  std::vector<double> point;  // interior of Delta_hat
  double fd_det = 0;          // finite-difference det Hess(u_hat)
  double closed_det = 0;      // det Hess(u) * det Hess(u_B) * p (hat coords)
  double rel_err = 0;
};

/// Finite-difference validation of the determinant factorization at random
/// interior points; one Richardson extrapolation per entry. Throws
/// FDInstability when the two step sizes disagree badly.
std::vector<DetCheckSample> det_identity_check(const CompatibleLift& lift,
                                               int sample_count, double step_scale,
                                               unsigned long long seed);

/// Exact F^{hat Delta}_{v,w}(u_hat) through the label-subset log algebra
/// (fiber polynomial parts must have degree <= 1).
Rational futaki_hat_of_lift(const CompatibleLift& lift, const Polynomial& v,
                            const Polynomial& w);

/// Exact F^{hat Delta}_{v,w}(sum_j L_j u_j): the u-independent constant of
/// the Mabuchi transfer.
Rational lift_constant_exact(const FiberModel& model,
                             const std::vector<SymplecticPotential>& fibers,
                             const Polynomial& v, const Polynomial& w);

/// M^{hat}_{v,w}(u_hat) with reference potential the lift of u_0: entropy
/// by quadrature over Delta_hat, linear term exact.
MabuchiValue mabuchi_hat(const CompatibleLift& lift, const Polynomial& v,
                         const Polynomial& w, double rel_tol);

struct LiftCheckReport {
  std::vector<DetCheckSample> det_checks;
  double max_det_rel_err = 0;
  std::vector<double> differences;  // M_hat - Vol(Delta_B) M_delta per potential
  Rational constant_exact{0};
  double max_constant_rel_dev = 0;
};

/// Full transfer check: pointwise determinant identity plus constancy of
/// M^{hat}(u_hat) - Vol(Delta_B) M^{Delta}(u) against the exact constant.
LiftCheckReport compatible_lift_check(const FiberModel& model,
                                      const std::vector<SymplecticPotential>& potentials,
                                      const std::vector<SymplecticPotential>& fibers,
                                      const Polynomial& v, const Polynomial& w,
                                      int sample_count, double step_scale,
                                      double rel_tol, unsigned long long seed);

/// det Hess(u) * prod L_i along an inward ray from a facet barycenter at
/// distances 10^{-k}; the Abreu boundary condition forces a positive limit.
std::vector<double> boundary_condition_probe(const SymplecticPotential& u,
                                             int facet_index, int kmax);

/// Sampled coercivity report: pairs (|u*|_{L1_pv}, M(u)) and an affine
/// minorant with positive slope when one exists over the sample.
struct CoercivityReport {
  std::vector<std::pair<double, double>> samples;  // (norm, energy)
  double slope = 0, offset = 0;
  bool positive_slope = false;
};

CoercivityReport coercivity_probe(const std::vector<SymplecticPotential>& potentials,
                                  const Polynomial& pv, const WeightExpr& what,
                                  const RatVec& x0, double rel_tol);

}  // namespace polystab
