#pragma once

#include <optional>

#include "polystab/pl_function.hpp"
#include "polystab/polytope.hpp"

namespace polystab {

enum class TcClass { RPL, DPL, DPLDom };

/// Donaldson test-configuration polytope
///   Delta_{R-f} = {(x, y) : x in Delta, 0 <= y <= R - f(x)}
/// with labels L union {y} union {R - y - f_i}. Labels of the base that
/// stop cutting facets (where R - f touches 0) are pruned and recorded.
struct TestConfigPolytope {
  LabeledPolytope base;
  PLConvexFunction f;
  Rational R{0};
  LabeledPolytope polytope;  // dimension dim(base) + 1
  TcClass classification = TcClass::RPL;
  DelzantVerdict delzant;
};

/// Builds Delta_{R-f}. R defaults to ceil(max f) + 1; min(R - f) < 0 is
/// rejected, equality is allowed (the touching labels become inactive and
/// are pruned). Pieces must have integer linear parts.
TestConfigPolytope donaldson_polytope(const LabeledPolytope& base,
                                      const PLConvexFunction& f,
                                      std::optional<Rational> R = std::nullopt);

/// DPL iff Delta_{R-f} is Delzant; DPL_dom iff additionally some active
/// piece of f is constant.
TcClass check_dpl_dom(const TestConfigPolytope& tc);

/// f + xi, pieces shifted; xi must have an integer linear part.
PLConvexFunction twist(const LabeledPolytope& base, const PLConvexFunction& f,
                       const AffineFunction& xi);

}  // namespace polystab
