#pragma once

#include <json.hpp>

#include "polystab/donaldson.hpp"
#include "polystab/fibration.hpp"
#include "polystab/functionals.hpp"
#include "polystab/mabuchi.hpp"
#include "polystab/stability.hpp"

namespace polystab {

// All schemas serialize rationals as "p/q" strings; objects use ordered
// keys so identical inputs produce byte-identical reports.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const AffineFunction& a);
AffineFunction affine_from_json(const Json& j);

Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json to_json(const LabeledPolytope& p);
LabeledPolytope polytope_from_json(const Json& j);

Json to_json(const PLConvexFunction& f);
/// Pieces only; activity pruning happens when paired with a polytope.
std::vector<AffineFunction> pl_pieces_from_json(const Json& j);

Json to_json(const BundleSpec& spec);
BundleSpec bundle_spec_from_json(const Json& j);

Json to_json(const FunctionalValue& v);
Json to_json(const DelzantVerdict& v);
Json to_json(const IdentityReport& r);
Json to_json(const StabilityReport& r);
Json to_json(const MabuchiValue& v);
Json to_json(const LiftCheckReport& r);

std::string sweep_csv(const std::vector<SweepRow>& rows);
/// Minimal self-contained SVG line chart of lambda against c.
std::string sweep_svg(const std::vector<SweepRow>& rows);

}  // namespace polystab
