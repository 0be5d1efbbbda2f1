#include "polystab/stability.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>

#include "polystab/lp.hpp"

namespace polystab {

namespace {

// Kuhn simplices of the cube grid on the order region 0 <= y_1 <= ... <= y_l <= N,
// mapped back through x_1 = y_1, x_i = y_i - y_{i-1}.
void enumerate_cells(int ell, int N, const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  std::vector<int> cell(ell, 0);
  std::vector<int> perm(ell);
  while (true) {
    // iterate permutations of {0..ell-1}
    for (int i = 0; i < ell; ++i) perm[i] = i;
    do {
      std::vector<std::vector<int>> verts_y;
      std::vector<int> v = cell;
      verts_y.push_back(v);
      bool ok = true;
      for (int k = 0; k < ell; ++k) {
        v[perm[k]] += 1;
        verts_y.push_back(v);
      }
      for (const auto& y : verts_y) {
        for (int i = 0; i + 1 < ell; ++i)
          if (y[i] > y[i + 1]) ok = false;
        if (y[ell - 1] > N) ok = false;
      }
      if (ok) {
        // back to simplex coordinates (multi-indices over N)
        std::vector<std::vector<int>> verts_x;
        for (const auto& y : verts_y) {
          std::vector<int> x(ell);
          x[0] = y[0];
          for (int i = 1; i < ell; ++i) x[i] = y[i] - y[i - 1];
          verts_x.push_back(std::move(x));
        }
        emit(verts_x);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    // advance the cube cell
    int i = 0;
    while (i < ell && cell[i] == N - 1) cell[i++] = 0;
    if (i == ell) break;
    ++cell[i];
  }
}

}  // namespace

ConvexGrid make_convex_grid(const LabeledPolytope& p, int N) {
  if (!is_standard_simplex(p))
    throw std::invalid_argument("convex grids are built on standard simplices");
  if (N < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const int ell = p.dim();

  ConvexGrid grid;
  grid.polytope = p;
  grid.N = N;

  std::map<std::vector<int>, int> node_id;
  auto intern = [&](const std::vector<int>& k) {
    auto it = node_id.find(k);
    if (it != node_id.end()) return it->second;
    int id = static_cast<int>(grid.nodes.size());
    node_id.emplace(k, id);
    RatVec x(ell);
    for (int i = 0; i < ell; ++i) x[i] = Rational(k[i]) / Rational(N);
    grid.nodes.push_back(std::move(x));
    return id;
  };

  enumerate_cells(ell, N, [&](const std::vector<std::vector<int>>& verts_x) {
    std::vector<int> ids;
    for (const auto& k : verts_x) ids.push_back(intern(k));
    grid.cells.push_back(std::move(ids));
  });

  // Interfaces: facets shared by two cells.
  std::map<std::vector<int>, std::vector<int>> facet_cells;
  for (size_t c = 0; c < grid.cells.size(); ++c) {
    const auto& cell = grid.cells[c];
    for (size_t skip = 0; skip < cell.size(); ++skip) {
      std::vector<int> facet;
      for (size_t i = 0; i < cell.size(); ++i)
        if (i != skip) facet.push_back(cell[i]);
      std::sort(facet.begin(), facet.end());
      facet_cells[facet].push_back(static_cast<int>(c));
    }
  }
  for (const auto& [facet, cells] : facet_cells) {
    if (cells.size() != 2) continue;
    ConvexGrid::Interface itf;
    itf.facet = facet;
    itf.left_cell = cells[0];
    itf.right_cell = cells[1];
    auto opposite = [&](int cell_id) {
      for (int id : grid.cells[cell_id])
        if (!std::binary_search(facet.begin(), facet.end(), id)) return id;
      throw Error("internal: degenerate grid interface");
    };
    itf.left_opposite = opposite(cells[0]);
    itf.right_opposite = opposite(cells[1]);
    grid.interfaces.push_back(std::move(itf));
  }

  // Base node: nearest the barycenter, lexicographically smallest on ties.
  RatVec bary = p.barycenter();
  Rational best_dist(-1);
  for (size_t i = 0; i < grid.nodes.size(); ++i) {
    RatVec d = vec_sub(grid.nodes[i], bary);
    Rational dist = dot(d, d);
    if (best_dist < 0 || dist < best_dist ||
        (dist == best_dist && grid.nodes[i] < grid.nodes[grid.x0_node])) {
      best_dist = dist;
      grid.x0_node = static_cast<int>(i);
    }
  }
  return grid;
}

namespace {

// Barycentric coordinates of point z with respect to a cell.
RatVec barycentric(const ConvexGrid& grid, const std::vector<int>& cell, const RatVec& z) {
  const int ell = grid.polytope.dim();
  RatMat m(ell + 1, RatVec(ell + 1, Rational(1)));
  RatVec rhs(ell + 1, Rational(1));
  for (int col = 0; col <= ell; ++col)
    for (int r = 0; r < ell; ++r) m[r][col] = grid.nodes[cell[col]][r];
  for (int r = 0; r < ell; ++r) rhs[r] = z[r];
  auto sol = solve_linear(std::move(m), std::move(rhs));
  if (!sol) throw Error("internal: degenerate grid cell");
  return *sol;
}

struct GridForms {
  RatVec mass;       // int lambda_s v dx
  RatVec objective;  // 2 int_bd lambda_s v dsigma - int lambda_s wv dx
};

GridForms node_forms(const ConvexGrid& grid, const Polynomial& v, const Polynomial& wv) {
  const int ell = grid.polytope.dim();
  GridForms forms;
  forms.mass.assign(grid.nodes.size(), Rational(0));
  forms.objective.assign(grid.nodes.size(), Rational(0));

  for (const auto& cell : grid.cells) {
    std::vector<RatVec> simplex;
    for (int id : cell) simplex.push_back(grid.nodes[id]);
    // chart x = w0 + W tau; hat of vertex j>=1 is tau_j, vertex 0 is 1-sum.
    std::vector<Polynomial> hats;
    Polynomial one = Polynomial::constant(ell, Rational(1));
    Polynomial sum(ell);
    for (int j = 1; j <= ell; ++j) {
      hats.push_back(Polynomial::coordinate(ell, j - 1));
      sum = sum + Polynomial::coordinate(ell, j - 1);
    }
    hats.insert(hats.begin(), one - sum);

    std::vector<AffineFunction> chart;  // x_i as affine in tau
    for (int i = 0; i < ell; ++i) {
      RatVec lin(ell);
      for (int c = 0; c < ell; ++c) lin[c] = simplex[c + 1][i] - simplex[0][i];
      chart.emplace_back(std::move(lin), simplex[0][i]);
    }
    RatMat edges;
    for (int c = 0; c < ell; ++c) edges.push_back(vec_sub(simplex[c + 1], simplex[0]));
    Rational jac = rational_abs(determinant(std::move(edges)));

    Polynomial v_tau = v.compose_affine(chart);
    Polynomial wv_tau = wv.compose_affine(chart);
    for (int j = 0; j <= ell; ++j) {
      Rational mass = jac * integrate_polynomial(standard_simplex(ell), hats[j] * v_tau);
      Rational load = jac * integrate_polynomial(standard_simplex(ell), hats[j] * wv_tau);
      forms.mass[cell[j]] += mass;
      forms.objective[cell[j]] -= load;
    }

    // boundary facets of this cell on the polytope boundary
    for (size_t skip = 0; skip < simplex.size(); ++skip) {
      std::vector<RatVec> fverts;
      std::vector<int> fids;
      for (size_t i = 0; i < simplex.size(); ++i)
        if (i != skip) {
          fverts.push_back(simplex[i]);
          fids.push_back(cell[i]);
        }
      int on_label = -1;
      for (size_t lab = 0; lab < grid.polytope.labels().size(); ++lab) {
        bool all = true;
        for (const auto& w : fverts)
          if (grid.polytope.labels()[lab].eval(w) != 0) all = false;
        if (all) {
          on_label = static_cast<int>(lab);
          break;
        }
      }
      if (on_label < 0) continue;
      Rational sigma = facet_simplex_sigma(fverts, grid.polytope.labels()[on_label]);
      if (ell == 1) {
        forms.objective[fids[0]] += 2 * sigma * v.eval(fverts[0]);
        continue;
      }
      // chart on the facet through its own vertices
      std::vector<AffineFunction> fchart;
      for (int i = 0; i < ell; ++i) {
        RatVec lin(ell - 1);
        for (int c = 0; c < ell - 1; ++c) lin[c] = fverts[c + 1][i] - fverts[0][i];
        fchart.emplace_back(std::move(lin), fverts[0][i]);
      }
      Polynomial v_f = v.compose_affine(fchart);
      Polynomial fone = Polynomial::constant(ell - 1, Rational(1));
      Polynomial fsum(ell - 1);
      std::vector<Polynomial> fhats;
      for (int j = 1; j <= ell - 1; ++j) {
        fhats.push_back(Polynomial::coordinate(ell - 1, j - 1));
        fsum = fsum + Polynomial::coordinate(ell - 1, j - 1);
      }
      fhats.insert(fhats.begin(), fone - fsum);
      for (int j = 0; j <= ell - 1; ++j) {
        Rational contrib = sigma * factorial(ell - 1) *
                           integrate_polynomial(standard_simplex(ell - 1), fhats[j] * v_f);
        forms.objective[fids[j]] += 2 * contrib;
      }
    }
  }
  return forms;
}

}  // namespace

LambdaEstimate estimate_lambda(const LabeledPolytope& p, const Polynomial& v_density,
                               const WeightExpr& w, int N, StabilityNorm norm) {
  ConvexGrid grid = make_convex_grid(p, N);
  Polynomial wv = w.pair_with(v_density);
  GridForms forms = node_forms(grid, v_density, wv);

  const int nv = static_cast<int>(grid.nodes.size());
  LinearProgram lp(nv);
  lp.set_objective(forms.objective);
  // normalization and base point
  lp.add_constraint(forms.mass, Relation::EQ, Rational(1));
  {
    RatVec row(nv, Rational(0));
    row[grid.x0_node] = 1;
    lp.add_constraint(row, Relation::EQ, Rational(0));
  }
  // convexity across interfaces
  for (const auto& itf : grid.interfaces) {
    RatVec lam = barycentric(grid, grid.cells[itf.left_cell],
                             grid.nodes[itf.right_opposite]);
    RatVec row(nv, Rational(0));
    row[itf.right_opposite] += 1;
    const auto& cell = grid.cells[itf.left_cell];
    for (size_t j = 0; j < cell.size(); ++j) row[cell[j]] -= lam[j];
    lp.add_constraint(std::move(row), Relation::GE, Rational(0));
  }

  LpResult res = lp.solve();
  LambdaEstimate est;
  est.norm = norm;
  if (res.status == LpStatus::Infeasible)
    throw LPInfeasible("degenerate normalization in the stability LP");
  if (res.status == LpStatus::Unbounded) {
    est.unbounded = true;
    est.nodal = res.ray;
    return est;
  }
  est.lambda = res.objective;
  est.nodal = res.x;

  if (norm == StabilityNorm::J) {
    // Upper bound along the L1-optimal direction: rescale by its J-norm.
    PLConvexFunction f = extract_destabilizer(grid, est.nodal);
    Rational j = j_norm(p, v_density, f);
    if (j == 0) throw EnvelopeDegenerate("J-norm vanishes on the LP minimizer");
    est.lambda = *est.lambda / j;
  }
  return est;
}

PLConvexFunction extract_destabilizer(const ConvexGrid& grid, const RatVec& nodal) {
  const int ell = grid.polytope.dim();
  std::vector<AffineFunction> pieces;
  for (const auto& cell : grid.cells) {
    // affine extension: solve for (linear, constant) through the nodes
    RatMat m(ell + 1, RatVec(ell + 1, Rational(1)));
    RatVec rhs(ell + 1);
    for (int r = 0; r <= ell; ++r) {
      for (int c = 0; c < ell; ++c) m[r][c] = grid.nodes[cell[r]][c];
      m[r][ell] = 1;
      rhs[r] = nodal[cell[r]];
    }
    auto sol = solve_linear(std::move(m), std::move(rhs));
    if (!sol) throw Error("internal: degenerate grid cell");
    RatVec lin(sol->begin(), sol->begin() + ell);
    pieces.emplace_back(std::move(lin), (*sol)[ell]);
  }
  return make_pl(grid.polytope, std::move(pieces));
}

StabilityReport stability_search(const LabeledPolytope& p, const Polynomial& v_density,
                                 const WeightExpr& w, const std::vector<int>& resolutions,
                                 StabilityNorm norm) {
  StabilityReport report;
  report.norm_used = norm;
  for (int N : resolutions) {
    LambdaEstimate est = estimate_lambda(p, v_density, w, N, norm);
    report.per_resolution.push_back({N, est.lambda, est.nodal, est.unbounded});
    bool destabilized = est.unbounded || (est.lambda && *est.lambda <= 0);
    if (destabilized && !report.destabilizer) {
      ConvexGrid grid = make_convex_grid(p, N);
      PLConvexFunction f = extract_destabilizer(grid, est.nodal);
      if (f.pieces().size() == 1) {
        bool nonconstant = false;
        for (const auto& c : f.pieces()[0].linear)
          if (c != 0) nonconstant = true;
        if (nonconstant)
          throw EnvelopeDegenerate(
              "destabilizing direction is affine; extremal normalization failed upstream");
      }
      report.destabilizer = f;
      report.certificate_futaki = futaki(p, v_density, w, f);
      report.certificate_norm = integrate_pl_product(p, f, v_density, Region::Interior);
      report.verdict = Verdict::Destabilized;
    }
  }
  return report;
}

std::vector<SweepRow> sweep(const BundleSpec& spec_template,
                            const std::vector<Rational>& c_values, int N,
                            StabilityNorm norm) {
  int threads = 1;
  if (const char* env = std::getenv("POLYSTAB_THREADS")) threads = std::max(1, atoi(env));

  std::vector<SweepRow> rows(c_values.size());
  auto run_one = [&](size_t i) {
    SweepRow row;
    row.c = c_values[i];
    row.N = N;
    try {
      BundleSpec spec = spec_template;
      spec.c = c_values[i];
      BundleProblem problem = bundle_problem(spec);
      LambdaEstimate est =
          estimate_lambda(problem.delta, problem.weights.density, problem.weights.wbar,
                          N, norm);
      row.lambda = est.lambda;
      row.nodal = est.nodal;
      bool destab = est.unbounded || (est.lambda && *est.lambda <= 0);
      row.verdict = destab ? "destabilized" : "no-destabilizer-found";
    } catch (const std::exception& e) {
      row.error = e.what();
      row.verdict = "error";
    }
    rows[i] = std::move(row);
  };

  if (threads <= 1) {
    for (size_t i = 0; i < c_values.size(); ++i) run_one(i);
  } else {
    std::vector<std::future<void>> futures;
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t)
      futures.push_back(std::async(std::launch::async, [&]() {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= c_values.size()) break;
          run_one(i);
        }
      }));
    for (auto& f : futures) f.get();
  }
  return rows;
}

}  // namespace polystab
