#pragma once

#include <vector>

#include "polystab/linalg.hpp"

namespace polystab {

/// Exact rational linear program
///     minimize c^T x   s.t.  A x (<= | = | >=) b,  x >= 0,
/// solved by a dense two-phase simplex method with Bland's rule
/// (deterministic, no cycling). Intended for the small instances produced
/// by polytope checks and grid stability searches.
enum class Relation { LE, EQ, GE };

struct LpConstraint {
  RatVec coeffs;
  Relation rel;
  Rational rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status;
  Rational objective;
  RatVec x;
  /// For Unbounded: a feasible ray direction along which the objective
  /// decreases without bound.
  RatVec ray;
};

class LinearProgram {
 public:
  explicit LinearProgram(int num_vars)
      : num_vars_(num_vars), objective_(num_vars, Rational(0)) {}

  void set_objective(RatVec c) { objective_ = std::move(c); }
  void add_constraint(RatVec coeffs, Relation rel, Rational rhs);
  int num_vars() const { return num_vars_; }

  LpResult solve() const;

 private:
  int num_vars_;
  RatVec objective_;
  std::vector<LpConstraint> constraints_;
};

}  // namespace polystab
