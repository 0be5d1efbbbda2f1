#pragma once

#include <optional>
#include <string>

#include "polystab/fibration.hpp"
#include "polystab/functionals.hpp"

namespace polystab {

/// Principal-lattice grid on the standard simplex at spacing 1/N with the
/// deterministic Kuhn triangulation (through the order-simplex chart) and
/// interface adjacency for convexity constraints.
struct ConvexGrid {
  LabeledPolytope polytope;
  int N = 0;
  std::vector<RatVec> nodes;
  std::vector<std::vector<int>> cells;  // dim+1 node ids each
  /// (shared facet nodes, opposite node in first cell, opposite in second).
  struct Interface {
    std::vector<int> facet;
    int left_cell = 0, right_cell = 0;
    int left_opposite = 0, right_opposite = 0;
  };
  std::vector<Interface> interfaces;
  int x0_node = 0;  // grid node nearest the barycenter (lex tie-break)
};

ConvexGrid make_convex_grid(const LabeledPolytope& p, int N);

enum class StabilityNorm { L1Star, J };

struct LambdaEstimate {
  std::optional<Rational> lambda;  // empty when the LP is unbounded below
  RatVec nodal;                    // minimizer (or ray) nodal values
  bool unbounded = false;
  StabilityNorm norm = StabilityNorm::L1Star;
};

/// Exact-LP minimum of F_{v,w} over convex nodal functions with f >= 0,
/// f(x0) = 0 and int f v dx = 1. Minimizing over the grid subfamily can
/// only raise the minimum, so the result is an upper bound for the true
/// uniform constant: lambda <= 0 certifies a destabilizer, lambda > 0 is
/// evidence to be read together with its N-trend.
LambdaEstimate estimate_lambda(const LabeledPolytope& p, const Polynomial& v_density,
                               const WeightExpr& w, int N, StabilityNorm norm);

/// Lower convex envelope of the nodal data as a max of supporting pieces.
PLConvexFunction extract_destabilizer(const ConvexGrid& grid, const RatVec& nodal);

enum class Verdict { Destabilized, NoDestabilizerFound };

struct StabilityReport {
  struct Entry {
    int N = 0;
    std::optional<Rational> lambda;
    RatVec nodal;  // minimizer (or ray) nodal values
    bool unbounded = false;
  };
  std::vector<Entry> per_resolution;
  std::optional<PLConvexFunction> destabilizer;
  std::optional<Rational> certificate_futaki;  // exact re-evaluation
  std::optional<Rational> certificate_norm;
  Verdict verdict = Verdict::NoDestabilizerFound;
  StabilityNorm norm_used = StabilityNorm::L1Star;
};

StabilityReport stability_search(const LabeledPolytope& p, const Polynomial& v_density,
                                 const WeightExpr& w, const std::vector<int>& resolutions,
                                 StabilityNorm norm);

struct SweepRow {
  Rational c{0};
  int N = 0;
  std::optional<Rational> lambda;
  std::string verdict;
  std::string error;             // empty on success
  std::string destabilizer_ref;  // file name when a certificate was written
  RatVec nodal;                  // minimizer nodal values (for extraction)
};

/// One bundle problem + lambda estimate per Kaehler parameter; per-point
/// failures are collected, the sweep continues. Honors POLYSTAB_THREADS.
std::vector<SweepRow> sweep(const BundleSpec& spec_template,
                            const std::vector<Rational>& c_values, int N,
                            StabilityNorm norm = StabilityNorm::L1Star);

}  // namespace polystab
