#pragma once

#include <functional>

#include "polystab/polytope.hpp"

namespace polystab {

using Evaluator = std::function<double(const std::vector<double>&)>;

struct QuadResult {
  double value = 0;
  double error_estimate = 0;
  bool converged = false;
  int cells = 0;
  int evaluations = 0;
};

struct QuadOptions {
  int max_cells = 200000;
  int max_shrink = 40;
};

/// Adaptive integration over the polytope interior: degree-7 vs degree-5
/// Grundmann-Moller rules on a priority-driven bisection of the initial
/// triangulation. Evaluation nodes are strictly interior; when the
/// evaluator still fails (NaN/inf/throw) the nodes are pulled toward the
/// cell centroid by factors 1 - 2^{-k}.
QuadResult quad_adaptive(const LabeledPolytope& p, const Evaluator& f,
                         double rel_tol, QuadOptions opts = QuadOptions{});

/// Same machinery on a fixed list of simplices (doubles, ambient coords).
QuadResult quad_adaptive_simplices(std::vector<std::vector<std::vector<double>>> simplices,
                                   const Evaluator& f, double rel_tol,
                                   QuadOptions opts = QuadOptions{});

}  // namespace polystab
