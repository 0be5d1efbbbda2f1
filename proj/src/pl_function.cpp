#include "polystab/pl_function.hpp"

#include <algorithm>
#include <set>

#include "polystab/lp.hpp"

namespace polystab {

PLConvexFunction::PLConvexFunction(std::vector<AffineFunction> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw EmptyPieceList("PL function needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end());
  pieces_.erase(std::unique(pieces_.begin(), pieces_.end()), pieces_.end());
}

Rational PLConvexFunction::eval(const RatVec& x) const {
  Rational m = pieces_[0].eval(x);
  for (size_t i = 1; i < pieces_.size(); ++i) m = std::max(m, pieces_[i].eval(x));
  return m;
}

double PLConvexFunction::eval(const std::vector<double>& x) const {
  double m = pieces_[0].eval(x);
  for (size_t i = 1; i < pieces_.size(); ++i) m = std::max(m, pieces_[i].eval(x));
  return m;
}

std::vector<AffineFunction> PLConvexFunction::crease_hyperplanes() const {
  std::set<AffineFunction> seen;
  std::vector<AffineFunction> out;
  for (size_t i = 0; i < pieces_.size(); ++i)
    for (size_t j = i + 1; j < pieces_.size(); ++j) {
      AffineFunction h = pieces_[i] - pieces_[j];
      // Normalize up to positive scaling with positive leading coefficient.
      Rational lead = 0;
      for (const auto& c : h.linear)
        if (c != 0) {
          lead = c;
          break;
        }
      if (lead == 0) lead = h.constant;
      if (lead == 0) continue;
      if (lead < 0) h = -h;
      lead = rational_abs(lead);
      h = h.scaled(Rational(1) / lead);
      if (seen.insert(h).second) out.push_back(h);
    }
  return out;
}

int PLConvexFunction::active_piece(const RatVec& x) const {
  int best = 0;
  Rational val = pieces_[0].eval(x);
  for (size_t i = 1; i < pieces_.size(); ++i) {
    Rational v = pieces_[i].eval(x);
    if (v > val) {
      val = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

Rational PLConvexFunction::max_over(const LabeledPolytope& p) const {
  Rational m = eval(p.vertices()[0]);
  for (const auto& v : p.vertices()) m = std::max(m, eval(v));
  return m;
}

Rational PLConvexFunction::min_over(const LabeledPolytope& p) const {
  // minimize t  s.t.  t >= f_i(x), x in p; variables split into positives.
  const int d = dim();
  const int nv = 2 * d + 2;  // x = u - w, t = tp - tm
  LinearProgram lp(nv);
  RatVec obj(nv, Rational(0));
  obj[2 * d] = 1;
  obj[2 * d + 1] = -1;
  lp.set_objective(obj);
  for (const auto& piece : pieces_) {
    RatVec row(nv, Rational(0));
    for (int j = 0; j < d; ++j) {
      row[j] = -piece.linear[j];
      row[d + j] = piece.linear[j];
    }
    row[2 * d] = 1;
    row[2 * d + 1] = -1;
    lp.add_constraint(row, Relation::GE, piece.constant);
  }
  for (const auto& lab : p.labels()) {
    RatVec row(nv, Rational(0));
    for (int j = 0; j < d; ++j) {
      row[j] = lab.linear[j];
      row[d + j] = -lab.linear[j];
    }
    lp.add_constraint(row, Relation::GE, -lab.constant);
  }
  LpResult res = lp.solve();
  if (res.status != LpStatus::Optimal)
    throw Error("internal: PL minimization over a compact polytope failed");
  return res.objective;
}

PLConvexFunction PLConvexFunction::shifted(const AffineFunction& xi) const {
  std::vector<AffineFunction> out;
  out.reserve(pieces_.size());
  for (const auto& f : pieces_) out.push_back(f + xi);
  return PLConvexFunction(std::move(out));
}

PLConvexFunction PLConvexFunction::scaled(const Rational& c) const {
  std::vector<AffineFunction> out;
  out.reserve(pieces_.size());
  for (const auto& f : pieces_) out.push_back(f.scaled(c));
  return PLConvexFunction(std::move(out));
}

PLConvexFunction make_pl(const LabeledPolytope& p, std::vector<AffineFunction> pieces) {
  if (pieces.empty()) throw EmptyPieceList("PL function needs at least one piece");
  std::sort(pieces.begin(), pieces.end());
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  if (pieces.size() == 1) return PLConvexFunction(std::move(pieces));

  const int d = p.dim();
  std::vector<AffineFunction> active;
  for (size_t k = 0; k < pieces.size(); ++k) {
    // max over p of min_{j != k} (f_k - f_j) >= 0 iff piece k is active.
    const int nv = 2 * d + 2;  // x split, t split
    LinearProgram lp(nv);
    RatVec obj(nv, Rational(0));
    obj[2 * d] = -1;  // maximize t
    obj[2 * d + 1] = 1;
    lp.set_objective(obj);
    for (size_t j = 0; j < pieces.size(); ++j) {
      if (j == k) continue;
      AffineFunction diff = pieces[k] - pieces[j];
      RatVec row(nv, Rational(0));
      for (int i = 0; i < d; ++i) {
        row[i] = diff.linear[i];
        row[d + i] = -diff.linear[i];
      }
      row[2 * d] = -1;
      row[2 * d + 1] = 1;
      lp.add_constraint(row, Relation::GE, -diff.constant);  // t <= diff(x)
    }
    for (const auto& lab : p.labels()) {
      RatVec row(nv, Rational(0));
      for (int i = 0; i < d; ++i) {
        row[i] = lab.linear[i];
        row[d + i] = -lab.linear[i];
      }
      lp.add_constraint(row, Relation::GE, -lab.constant);
    }
    LpResult res = lp.solve();
    if (res.status != LpStatus::Optimal)
      throw Error("internal: piece-activity LP must be bounded on a polytope");
    if (-res.objective >= 0) active.push_back(pieces[k]);
  }
  return PLConvexFunction(std::move(active));
}

std::vector<RatVec> crease_subdivision_vertices(const LabeledPolytope& p,
                                                const PLConvexFunction& f) {
  SimplicialSubdivision sub = triangulate_with_creases(p, f.crease_hyperplanes());
  std::set<RatVec> verts;
  for (const auto& s : sub.simplices)
    for (const auto& v : s) verts.insert(v);
  return {verts.begin(), verts.end()};
}

}  // namespace polystab
