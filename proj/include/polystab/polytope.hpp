#pragma once

#include <vector>

#include "polystab/affine.hpp"
#include "polystab/errors.hpp"

namespace polystab {

struct BuildOptions {
  bool require_primitive = true;
  bool prune_inactive = false;
};

/// Compact convex polytope {x : L_i(x) >= 0} cut out by affine labels whose
/// linear parts are primitive lattice vectors. Vertices are enumerated at
/// construction; the object is immutable afterwards.
class LabeledPolytope {
 public:
  using Options = BuildOptions;

  /// Vertex enumeration by solving all dim-subsets of labels; verifies
  /// boundedness, full dimension and (unless pruning) activity of every
  /// label.
  static LabeledPolytope build(std::vector<AffineFunction> labels,
                               Options opts = Options{});

  int dim() const { return dim_; }
  const std::vector<AffineFunction>& labels() const { return labels_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  /// Indices of labels vanishing at vertex v.
  const std::vector<std::vector<int>>& vertex_active_labels() const {
    return active_at_vertex_;
  }
  /// Labels removed during construction (prune_inactive mode only).
  const std::vector<int>& pruned_labels() const { return pruned_; }

  /// Vertices lying on facet {L_i = 0}.
  std::vector<RatVec> facet_vertices(int label_index) const;

  RatVec barycenter() const;
  bool contains(const RatVec& x) const;
  bool is_interior(const RatVec& x) const;

  bool same_vertex_set(const LabeledPolytope& other) const;

 private:
  int dim_ = 0;
  std::vector<AffineFunction> labels_;
  std::vector<RatVec> vertices_;
  std::vector<std::vector<int>> active_at_vertex_;
  std::vector<int> pruned_;
};

/// Standard simplex {x_i >= 0, 1 - sum x_i >= 0} with the label order
/// L_0 = 1 - sum x, L_k = x_k.
LabeledPolytope standard_simplex(int dim);
bool is_standard_simplex(const LabeledPolytope& p);

struct DelzantVerdict {
  bool simple = true;
  bool integral = true;
  std::vector<int> failing_vertices;
};

/// Simplicity (exactly dim labels active per vertex) and integrality
/// (adjacent normals of determinant +-1) check.
DelzantVerdict is_delzant(const LabeledPolytope& p);

/// Union of simplices with pairwise disjoint interiors covering the
/// polytope; every compatible hyperplane keeps a constant sign on each
/// simplex.
struct SimplicialSubdivision {
  int dim = 0;
  std::vector<std::vector<RatVec>> simplices;  // dim+1 vertices each
  std::vector<AffineFunction> compatible_hyperplanes;

  Rational total_volume() const;
};

/// Deterministic pulling triangulation from the lexicographically smallest
/// vertex.
SimplicialSubdivision triangulate(const LabeledPolytope& p);

/// Triangulation refined so every hyperplane in the list has constant sign
/// per simplex. Hyperplanes with zero linear part and nonzero constant are
/// globally signed and ignored; an identically zero hyperplane is rejected.
SimplicialSubdivision triangulate_with_creases(
    const LabeledPolytope& p, const std::vector<AffineFunction>& hyperplanes);

/// Pulling triangulation of the facet {L_i = 0}, refined by creases, in
/// ambient coordinates. Each simplex has dim vertices.
std::vector<std::vector<RatVec>> triangulate_facet_with_creases(
    const LabeledPolytope& p, int label_index,
    const std::vector<AffineFunction>& hyperplanes);

Rational simplex_volume(const std::vector<RatVec>& simplex);

}  // namespace polystab
