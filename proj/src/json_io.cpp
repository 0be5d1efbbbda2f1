#include "polystab/json_io.hpp"

#include <cstdio>

namespace polystab {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Json to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return parse_rational(j.get<std::string>());
}

Json to_json(const AffineFunction& a) {
  Json lin = Json::array();
  for (const auto& c : a.linear) lin.push_back(to_json(c));
  return Json{{"linear", lin}, {"constant", to_json(a.constant)}};
}

AffineFunction affine_from_json(const Json& j) {
  RatVec lin;
  for (const auto& c : j.at("linear")) lin.push_back(rational_from_json(c));
  return AffineFunction(std::move(lin), rational_from_json(j.at("constant")));
}

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(Json{{"exp", e}, {"coef", to_json(c)}});
  return Json{{"dim", p.dim()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const Json& j) {
  Polynomial p(j.at("dim").get<int>());
  for (const auto& t : j.at("terms"))
    p.add_term(t.at("exp").get<std::vector<int>>(), rational_from_json(t.at("coef")));
  return p;
}

Json to_json(const LabeledPolytope& p) {
  Json labels = Json::array();
  for (const auto& l : p.labels()) labels.push_back(to_json(l));
  return Json{{"dim", p.dim()}, {"labels", labels}};
}

LabeledPolytope polytope_from_json(const Json& j) {
  std::vector<AffineFunction> labels;
  for (const auto& l : j.at("labels")) labels.push_back(affine_from_json(l));
  LabeledPolytope p = LabeledPolytope::build(std::move(labels));
  if (p.dim() != j.at("dim").get<int>())
    throw std::invalid_argument("polytope dimension mismatch");
  return p;
}

Json to_json(const PLConvexFunction& f) {
  Json pieces = Json::array();
  for (const auto& piece : f.pieces()) pieces.push_back(to_json(piece));
  return Json{{"pieces", pieces}};
}

std::vector<AffineFunction> pl_pieces_from_json(const Json& j) {
  std::vector<AffineFunction> pieces;
  for (const auto& piece : j.at("pieces")) pieces.push_back(affine_from_json(piece));
  return pieces;
}

Json to_json(const BundleSpec& spec) {
  Json blocks = Json::array();
  for (const auto& [rank, degree] : spec.blocks)
    blocks.push_back(Json{{"rank", rank}, {"degree", degree}});
  return Json{{"genus", spec.genus}, {"blocks", blocks}, {"c", to_json(spec.c)}};
}

BundleSpec bundle_spec_from_json(const Json& j) {
  BundleSpec spec;
  spec.genus = j.at("genus").get<int>();
  for (const auto& b : j.at("blocks"))
    spec.blocks.emplace_back(b.at("rank").get<int>(), b.at("degree").get<int>());
  spec.c = rational_from_json(j.at("c"));
  if (j.contains("base_volume")) {
    spec.base_volume.coefficient = rational_from_json(j["base_volume"].at("coefficient"));
    spec.base_volume.power = j["base_volume"].at("two_pi_power").get<int>();
  }
  spec.validate();
  return spec;
}

Json to_json(const FunctionalValue& v) {
  return Json{{"rational", to_json(v.rational_part)},
              {"two_pi_power", v.two_pi_power},
              {"float_view", fmt_double(v.float_view())}};
}

Json to_json(const DelzantVerdict& v) {
  return Json{{"simple", v.simple},
              {"integral", v.integral},
              {"failing_vertices", v.failing_vertices}};
}

Json to_json(const IdentityReport& r) {
  auto check = [](const IdentityCheck& c) {
    return Json{{"check", c.name},
                {"lhs", to_json(c.lhs)},
                {"rhs", to_json(c.rhs)},
                {"difference", to_json(c.difference())}};
  };
  Json boundary = Json::array();
  for (const auto& c : r.boundary) boundary.push_back(check(c));
  return Json{{"pullback", check(r.pullback)},
              {"boundary", boundary},
              {"futaki", check(r.futaki_transfer)},
              {"all_zero", r.all_zero()}};
}

Json to_json(const StabilityReport& r) {
  Json per_n = Json::array();
  for (const auto& e : r.per_resolution)
    per_n.push_back(Json{{"N", e.N},
                         {"lambda", e.unbounded ? Json("-inf") : (e.lambda ? to_json(*e.lambda) : Json(nullptr))},
                         {"unbounded", e.unbounded}});
  Json out{{"norm", r.norm_used == StabilityNorm::L1Star ? "l1" : "j"},
           {"per_resolution", per_n},
           {"verdict", r.verdict == Verdict::Destabilized ? "destabilized"
                                                          : "no-destabilizer-found"}};
  if (r.destabilizer) {
    out["destabilizer"] = to_json(*r.destabilizer);
    out["certificate_futaki"] = to_json(*r.certificate_futaki);
    out["certificate_norm"] = to_json(*r.certificate_norm);
  }
  return out;
}

Json to_json(const MabuchiValue& v) {
  return Json{{"entropy", fmt_double(v.entropy)},
              {"entropy_error", fmt_double(v.entropy_error)},
              {"linear", to_json(v.linear)},
              {"total", fmt_double(v.total())},
              {"converged", v.converged}};
}

Json to_json(const LiftCheckReport& r) {
  Json checks = Json::array();
  for (const auto& s : r.det_checks) {
    Json pt = Json::array();
    for (double c : s.point) pt.push_back(fmt_double(c));
    checks.push_back(Json{{"point", pt},
                          {"fd_det", fmt_double(s.fd_det)},
                          {"closed_det", fmt_double(s.closed_det)},
                          {"rel_err", fmt_double(s.rel_err)}});
  }
  Json diffs = Json::array();
  for (double d : r.differences) diffs.push_back(fmt_double(d));
  return Json{{"det_checks", checks},
              {"max_det_rel_err", fmt_double(r.max_det_rel_err)},
              {"mabuchi_differences", diffs},
              {"constant_exact", to_json(r.constant_exact)},
              {"max_constant_rel_dev", fmt_double(r.max_constant_rel_dev)}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "c,N,lambda_num,lambda_den,verdict,destabilizer_ref\n";
  for (const auto& r : rows) {
    out += format_rational(r.c) + "," + std::to_string(r.N) + ",";
    if (r.lambda) {
      out += numerator(*r.lambda).str() + "," + denominator(*r.lambda).str();
    } else {
      out += ",";
    }
    out += "," + r.verdict + ",";
    if (!r.destabilizer_ref.empty())
      out += r.destabilizer_ref;
    else if (!r.error.empty())
      out += "(" + r.error + ")";
    out += "\n";
  }
  return out;
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  const int w = 640, h = 400, margin = 50;
  double cmin = 1e300, cmax = -1e300, lmin = 1e300, lmax = -1e300;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (!r.lambda) continue;
    double x = to_double(r.c), y = to_double(*r.lambda);
    pts.emplace_back(x, y);
    cmin = std::min(cmin, x); cmax = std::max(cmax, x);
    lmin = std::min(lmin, y); lmax = std::max(lmax, y);
  }
  if (pts.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
  if (cmax == cmin) cmax = cmin + 1;
  if (lmax == lmin) lmax = lmin + 1;
  auto px = [&](double c) { return margin + (c - cmin) / (cmax - cmin) * (w - 2 * margin); };
  auto py = [&](double l) { return h - margin - (l - lmin) / (lmax - lmin) * (h - 2 * margin); };
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(w) + "\" height=\"" + std::to_string(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (const auto& [x, y] : pts)
    svg += fmt_double(px(x)) + "," + fmt_double(py(y)) + " ";
  svg += "\"/>\n";
  if (lmin < 0 && lmax > 0)
    svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" + fmt_double(py(0)) +
           "\" x2=\"" + std::to_string(w - margin) + "\" y2=\"" + fmt_double(py(0)) +
           "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
  for (const auto& [x, y] : pts)
    svg += "<circle cx=\"" + fmt_double(px(x)) + "\" cy=\"" + fmt_double(py(y)) +
           "\" r=\"3\" fill=\"black\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace polystab
