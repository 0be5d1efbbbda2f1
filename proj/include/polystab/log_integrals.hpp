#pragma once

#include "polystab/integrate.hpp"
#include "polystab/polynomial.hpp"

namespace polystab {

// Exact integrals of polynomial * log(subset sum) over the standard
// n-simplex. Labels are indexed 0..n: label 0 is 1 - sum x, label k is x_k.
// Subset sums of labels are exactly the affine functions appearing in
// Guillemin potentials and their lifts through block moment maps, and all
// such integrals are rational (reduction to int_0^1 u^a (1-u)^b log u du).

/// The affine function sum_{i in subset} label_i on the standard simplex.
AffineFunction subset_affine(int dim, const std::vector<int>& subset);

/// Exact int_{std simplex} q * log(S) dx for the subset-sum S.
Rational integrate_log_subset(const Polynomial& q, std::vector<int> subset);

/// Exact int over facet {label_c = 0} of q * log(S) dsigma. When the
/// subset collapses on the facet, q must vanish there (the integrand is
/// then identically zero); otherwise the integral would diverge.
Rational integrate_log_subset_facet(const Polynomial& q, std::vector<int> subset,
                                    int facet_label);

/// poly + sum_k coef_k * S_k log(S_k) on a standard simplex: the function
/// algebra closed under Guillemin potentials, their block lifts, and
/// polynomial perturbations.
struct LogLinComb {
  int dim = 0;
  Polynomial poly;
  std::vector<std::pair<Rational, std::vector<int>>> log_terms;

  explicit LogLinComb(int d) : dim(d), poly(d) {}

  void add_log_term(const Rational& coef, std::vector<int> subset);
  LogLinComb operator+(const LogLinComb& o) const;

  double eval(const std::vector<double>& x) const;
};

/// Guillemin potential (1/2) sum_i L_i log L_i of the standard simplex.
LogLinComb guillemin_log_comb(int dim);

/// Exact 2 int_bd h * v dsigma - int h * w dx over the standard dim-simplex
/// for h in the log algebra and polynomial weights v, w.
Rational futaki_log_comb(const LogLinComb& h, const Polynomial& v, const Polynomial& w);

}  // namespace polystab
