#include "polystab/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "polystab/lp.hpp"

namespace polystab {

namespace {

// All k-subsets of {0..n-1}, lexicographic.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Feasibility of {<p_i, y> >= 0 for all i, y_k = sign} detects a recession
// direction with a nonzero k-th component.
bool recession_direction_exists(const std::vector<AffineFunction>& labels, int dim) {
  for (int k = 0; k < dim; ++k) {
    for (int sign : {1, -1}) {
      LinearProgram lp(2 * dim);  // y = u - w, u,w >= 0
      for (const auto& lab : labels) {
        RatVec row(2 * dim);
        for (int j = 0; j < dim; ++j) {
          row[j] = lab.linear[j];
          row[dim + j] = -lab.linear[j];
        }
        lp.add_constraint(row, Relation::GE, Rational(0));
      }
      RatVec fix(2 * dim, Rational(0));
      fix[k] = 1;
      fix[dim + k] = -1;
      lp.add_constraint(fix, Relation::EQ, Rational(sign));
      if (lp.solve().status != LpStatus::Infeasible) return true;
    }
  }
  return false;
}

}  // namespace

LabeledPolytope LabeledPolytope::build(std::vector<AffineFunction> labels, Options opts) {
  LabeledPolytope p;
  if (labels.empty()) throw EmptyOrLowerDimensional("no labels");
  p.dim_ = labels[0].dim();
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].dim() != p.dim_)
      throw DimensionMismatch("label dimension mismatch");
    if (opts.require_primitive && !labels[i].has_primitive_linear())
      throw NonPrimitiveNormal(static_cast<int>(i));
  }

  const int n = static_cast<int>(labels.size());
  std::set<RatVec> seen;
  std::vector<RatVec> verts;
  for_each_subset(n, p.dim_, [&](const std::vector<int>& idx) {
    RatMat m(p.dim_, RatVec(p.dim_));
    RatVec rhs(p.dim_);
    for (int r = 0; r < p.dim_; ++r) {
      m[r] = labels[idx[r]].linear;
      rhs[r] = -labels[idx[r]].constant;
    }
    auto x = solve_linear(std::move(m), std::move(rhs));
    if (!x) return;
    for (const auto& lab : labels)
      if (lab.eval(*x) < 0) return;
    if (seen.insert(*x).second) verts.push_back(*x);
  });

  if (verts.empty() || affine_rank(verts) < p.dim_)
    throw EmptyOrLowerDimensional("polytope is empty or lower-dimensional");
  if (recession_direction_exists(labels, p.dim_))
    throw UnboundedPolytope("label set does not bound a polytope");

  // Activity: a label must vanish on a facet, i.e. on vertices spanning
  // dimension dim-1.
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    std::vector<RatVec> on;
    for (const auto& v : verts)
      if (labels[i].eval(v) == 0) on.push_back(v);
    bool active = !on.empty() && affine_rank(on) == p.dim_ - 1;
    if (active) {
      keep.push_back(i);
    } else if (!opts.prune_inactive) {
      throw InactiveLabel(i);
    } else {
      p.pruned_.push_back(i);
    }
  }
  for (int i : keep) p.labels_.push_back(labels[i]);

  std::sort(verts.begin(), verts.end());
  p.vertices_ = std::move(verts);
  p.active_at_vertex_.resize(p.vertices_.size());
  for (size_t v = 0; v < p.vertices_.size(); ++v)
    for (size_t i = 0; i < p.labels_.size(); ++i)
      if (p.labels_[i].eval(p.vertices_[v]) == 0)
        p.active_at_vertex_[v].push_back(static_cast<int>(i));
  return p;
}

std::vector<RatVec> LabeledPolytope::facet_vertices(int label_index) const {
  std::vector<RatVec> out;
  for (const auto& v : vertices_)
    if (labels_[label_index].eval(v) == 0) out.push_back(v);
  return out;
}

RatVec LabeledPolytope::barycenter() const {
  RatVec c(dim_, Rational(0));
  for (const auto& v : vertices_) c = vec_add(c, v);
  return vec_scale(Rational(1) / Rational(static_cast<int>(vertices_.size())), c);
}

bool LabeledPolytope::contains(const RatVec& x) const {
  for (const auto& l : labels_)
    if (l.eval(x) < 0) return false;
  return true;
}

bool LabeledPolytope::is_interior(const RatVec& x) const {
  for (const auto& l : labels_)
    if (l.eval(x) <= 0) return false;
  return true;
}

bool LabeledPolytope::same_vertex_set(const LabeledPolytope& other) const {
  return vertices_ == other.vertices_;  // both sorted at construction
}

LabeledPolytope standard_simplex(int dim) {
  std::vector<AffineFunction> labels;
  labels.push_back({RatVec(dim, Rational(-1)), Rational(1)});
  for (int k = 0; k < dim; ++k) labels.push_back(affine_coord(dim, k));
  return LabeledPolytope::build(std::move(labels));
}

bool is_standard_simplex(const LabeledPolytope& p) {
  LabeledPolytope s = standard_simplex(p.dim());
  if (p.labels().size() != s.labels().size()) return false;
  auto a = p.labels(), b = s.labels();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

DelzantVerdict is_delzant(const LabeledPolytope& p) {
  DelzantVerdict verdict;
  const auto& active = p.vertex_active_labels();
  for (size_t v = 0; v < p.vertices().size(); ++v) {
    if (static_cast<int>(active[v].size()) != p.dim()) {
      verdict.simple = false;
      verdict.integral = false;
      verdict.failing_vertices.push_back(static_cast<int>(v));
      continue;
    }
    RatMat m;
    for (int i : active[v]) m.push_back(p.labels()[i].linear);
    Rational d = determinant(std::move(m));
    if (d != 1 && d != -1) {
      verdict.integral = false;
      verdict.failing_vertices.push_back(static_cast<int>(v));
    }
  }
  return verdict;
}

Rational simplex_volume(const std::vector<RatVec>& simplex) {
  const int d = static_cast<int>(simplex.size()) - 1;
  RatMat m;
  for (int i = 1; i <= d; ++i) m.push_back(vec_sub(simplex[i], simplex[0]));
  return rational_abs(determinant(std::move(m))) / factorial(d);
}

Rational SimplicialSubdivision::total_volume() const {
  Rational v = 0;
  for (const auto& s : simplices) v += simplex_volume(s);
  return v;
}

namespace {

// Pulling triangulation of a face given by its vertices, the full label
// list, and the labels active on the whole face.
void pulling(const std::vector<RatVec>& face_verts, int face_dim,
             const std::vector<AffineFunction>& labels,
             const std::vector<int>& face_active,
             std::vector<std::vector<RatVec>>& result) {
  if (static_cast<int>(face_verts.size()) == face_dim + 1) {
    result.push_back(face_verts);
    return;
  }
  const RatVec& v0 = face_verts.front();  // callers keep vertices sorted
  std::set<std::vector<RatVec>> facets;
  std::set<int> active_set(face_active.begin(), face_active.end());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (active_set.count(static_cast<int>(i))) continue;
    std::vector<RatVec> on;
    for (const auto& v : face_verts)
      if (labels[i].eval(v) == 0) on.push_back(v);
    if (static_cast<int>(on.size()) < face_dim) continue;
    if (affine_rank(on) != face_dim - 1) continue;
    std::sort(on.begin(), on.end());
    facets.insert(std::move(on));
  }
  for (const auto& f : facets) {
    if (std::binary_search(f.begin(), f.end(), v0)) continue;
    // Labels active on the whole facet:
    std::vector<int> fa;
    for (size_t i = 0; i < labels.size(); ++i) {
      bool all = true;
      for (const auto& v : f)
        if (labels[i].eval(v) != 0) {
          all = false;
          break;
        }
      if (all) fa.push_back(static_cast<int>(i));
    }
    std::vector<std::vector<RatVec>> sub;
    pulling(f, face_dim - 1, labels, fa, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), v0);
      result.push_back(std::move(s));
    }
  }
}

std::vector<std::vector<RatVec>> triangulate_cell(const LabeledPolytope& p) {
  std::vector<std::vector<RatVec>> result;
  std::vector<int> none;
  pulling(p.vertices(), p.dim(), p.labels(), none, result);
  return result;
}

}  // namespace

SimplicialSubdivision triangulate(const LabeledPolytope& p) {
  SimplicialSubdivision sub;
  sub.dim = p.dim();
  sub.simplices = triangulate_cell(p);
  return sub;
}

SimplicialSubdivision triangulate_with_creases(
    const LabeledPolytope& p, const std::vector<AffineFunction>& hyperplanes) {
  std::vector<LabeledPolytope> cells = {p};
  LabeledPolytope::Options cell_opts{.require_primitive = false,
                                     .prune_inactive = true};
  std::vector<AffineFunction> used;
  for (const auto& h : hyperplanes) {
    bool zero_linear = true;
    for (const auto& c : h.linear)
      if (c != 0) zero_linear = false;
    if (zero_linear) {
      if (h.constant == 0)
        throw DegenerateHyperplane("identically zero hyperplane");
      continue;  // globally signed, no crease
    }
    used.push_back(h);
    std::vector<LabeledPolytope> next;
    for (auto& cell : cells) {
      bool has_pos = false, has_neg = false;
      for (const auto& v : cell.vertices()) {
        Rational val = h.eval(v);
        if (val > 0) has_pos = true;
        if (val < 0) has_neg = true;
      }
      if (!(has_pos && has_neg)) {
        next.push_back(std::move(cell));
        continue;
      }
      for (const AffineFunction& side : {h, -h}) {
        auto labels = cell.labels();
        labels.push_back(side);
        try {
          next.push_back(LabeledPolytope::build(labels, cell_opts));
        } catch (const EmptyOrLowerDimensional&) {
        }
      }
    }
    cells = std::move(next);
  }

  SimplicialSubdivision sub;
  sub.dim = p.dim();
  sub.compatible_hyperplanes = used;
  for (const auto& cell : cells)
    for (auto& s : triangulate_cell(cell)) sub.simplices.push_back(std::move(s));

  // Constant-sign guarantee per simplex.
  for (const auto& s : sub.simplices)
    for (const auto& h : used) {
      bool pos = false, neg = false;
      for (const auto& v : s) {
        Rational val = h.eval(v);
        if (val > 0) pos = true;
        if (val < 0) neg = true;
      }
      if (pos && neg)
        throw Error("internal: crease subdivision produced a crossed simplex");
    }
  return sub;
}

std::vector<std::vector<RatVec>> triangulate_facet_with_creases(
    const LabeledPolytope& p, int label_index,
    const std::vector<AffineFunction>& hyperplanes) {
  const int d = p.dim();
  std::vector<RatVec> fverts = p.facet_vertices(label_index);
  if (fverts.empty() || affine_rank(fverts) != d - 1)
    throw InactiveLabel(label_index);
  std::sort(fverts.begin(), fverts.end());

  if (d == 1) return {{fverts[0]}};

  // Chart: xi -> w0 + W xi with W spanning the facet directions.
  const RatVec& w0 = fverts[0];
  RatMat frame;  // rows are direction vectors
  for (size_t i = 1; i < fverts.size() && static_cast<int>(frame.size()) < d - 1; ++i) {
    frame.push_back(vec_sub(fverts[i], w0));
    if (rank(frame) != static_cast<int>(frame.size())) frame.pop_back();
  }

  // Independent coordinate rows of W^T for solving W xi = v - w0.
  RatMat wt(d, RatVec(d - 1));  // W as d x (d-1)
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d - 1; ++c) wt[r][c] = frame[c][r];
  std::vector<int> rows;
  {
    RatMat probe;
    for (int r = 0; r < d && static_cast<int>(rows.size()) < d - 1; ++r) {
      probe.push_back(wt[r]);
      if (rank(probe) == static_cast<int>(probe.size()))
        rows.push_back(r);
      else
        probe.pop_back();
    }
  }
  auto to_chart = [&](const RatVec& v) {
    RatMat m(d - 1, RatVec(d - 1));
    RatVec rhs(d - 1);
    for (int r = 0; r < d - 1; ++r) {
      m[r] = wt[rows[r]];
      rhs[r] = v[rows[r]] - w0[rows[r]];
    }
    auto xi = solve_linear(std::move(m), std::move(rhs));
    if (!xi) throw Error("internal: facet chart inversion failed");
    return *xi;
  };
  auto from_chart = [&](const RatVec& xi) {
    RatVec x = w0;
    for (int c = 0; c < d - 1; ++c)
      x = vec_add(x, vec_scale(xi[c], frame[c]));
    return x;
  };
  // Pullback of an affine function through the chart.
  auto pull = [&](const AffineFunction& l) {
    RatVec lin(d - 1);
    for (int c = 0; c < d - 1; ++c) lin[c] = dot(l.linear, frame[c]);
    return AffineFunction(lin, l.eval(w0));
  };

  std::vector<AffineFunction> chart_labels;
  for (size_t i = 0; i < p.labels().size(); ++i) {
    if (static_cast<int>(i) == label_index) continue;
    AffineFunction pl = pull(p.labels()[i]);
    bool zero = pl.constant == 0;
    for (const auto& c : pl.linear)
      if (c != 0) zero = false;
    if (!zero) chart_labels.push_back(pl);
  }
  LabeledPolytope facet_poly = LabeledPolytope::build(
      chart_labels, {.require_primitive = false, .prune_inactive = true});

  std::vector<AffineFunction> chart_creases;
  for (const auto& h : hyperplanes) {
    AffineFunction ph = pull(h);
    bool zero = ph.constant == 0;
    for (const auto& c : ph.linear)
      if (c != 0) zero = false;
    if (!zero) chart_creases.push_back(ph);  // creases inside the facet plane restrict to 0
  }
  SimplicialSubdivision sub = triangulate_with_creases(facet_poly, chart_creases);

  std::vector<std::vector<RatVec>> out;
  for (const auto& s : sub.simplices) {
    std::vector<RatVec> amb;
    for (const auto& xi : s) amb.push_back(from_chart(xi));
    out.push_back(std::move(amb));
  }
  return out;
}

}  // namespace polystab
