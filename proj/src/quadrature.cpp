#include "polystab/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "polystab/errors.hpp"

namespace polystab {

namespace {

struct GmRule {
  // Barycentric-style node coordinates on the standard simplex plus weights
  // normalized so that sum(w) = Vol(standard simplex) = 1/n!.
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
};

// Grundmann-Moller rule of degree 2s+1 in dimension n.
GmRule gm_rule(int n, int s) {
  GmRule rule;
  const int d = 2 * s + 1;
  double nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  auto fact = [](int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  for (int i = 0; i <= s; ++i) {
    double w = std::pow(2.0, -2 * s) * std::pow(double(d + n - 2 * i), d) /
               (fact(i) * fact(d + n - i));
    if (i % 2) w = -w;
    // All barycentric beta in Z_{>=0}^{n+1} with |beta| = s - i; the node's
    // simplex coordinates are the last n barycentric components.
    const int k = s - i;
    const int slots = n + 1;
    std::vector<int> beta(slots, 0);
    beta[0] = k;
    while (true) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j)
        x[j] = double(2 * beta[j + 1] + 1) / double(d + n - 2 * i);
      rule.nodes.push_back(std::move(x));
      rule.weights.push_back(w);
      // next composition of k into n+1 parts
      int j = 0;
      while (j < slots - 1 && beta[j] == 0) ++j;
      if (j == slots - 1) break;
      int take = beta[j];
      beta[j] = 0;
      beta[j + 1] += 1;
      beta[0] = take - 1;
    }
  }
  return rule;
}

struct Cell {
  std::vector<std::vector<double>> verts;  // n+1 ambient points
  double jac = 0;                          // |det M|, M = edge matrix
  double i7 = 0, i5 = 0;
  double err = 0;
};

double edge_matrix_det(const std::vector<std::vector<double>>& verts) {
  const int n = static_cast<int>(verts.size()) - 1;
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = verts[i + 1][j] - verts[0][j];
  // LU with partial pivoting
  double det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (m[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (int cc = c; cc < n; ++cc) m[r][cc] -= f * m[c][cc];
    }
  }
  return std::fabs(det);
}

}  // namespace

QuadResult quad_adaptive_simplices(std::vector<std::vector<std::vector<double>>> simplices,
                                   const Evaluator& f, double rel_tol, QuadOptions opts) {
  if (simplices.empty()) throw std::invalid_argument("no simplices");
  const int n = static_cast<int>(simplices[0].size()) - 1;
  const GmRule r7 = gm_rule(n, 3);
  const GmRule r5 = gm_rule(n, 2);

  QuadResult result;

  auto evaluate_cell = [&](Cell& cell) {
    cell.jac = edge_matrix_det(cell.verts);
    std::vector<double> centroid(n, 0);
    for (const auto& v : cell.verts)
      for (int j = 0; j < n; ++j) centroid[j] += v[j] / (n + 1);
    auto apply = [&](const GmRule& rule) {
      double acc = 0;
      for (size_t q = 0; q < rule.nodes.size(); ++q) {
        std::vector<double> x(n);
        for (int j = 0; j < n; ++j) {
          x[j] = cell.verts[0][j];
          for (int i = 0; i < n; ++i)
            x[j] += (cell.verts[i + 1][j] - cell.verts[0][j]) * rule.nodes[q][i];
        }
        double val = 0;
        bool ok = false;
        std::vector<double> probe = x;
        for (int shrink = 0; shrink <= opts.max_shrink; ++shrink) {
          try {
            val = f(probe);
            ++result.evaluations;
            if (std::isfinite(val)) {
              ok = true;
              break;
            }
          } catch (const NotConvex&) {
            throw;
          } catch (...) {
          }
          double rho = 1.0 - std::pow(2.0, -(shrink + 1));
          for (int j = 0; j < n; ++j)
            probe[j] = centroid[j] + rho * (x[j] - centroid[j]);
        }
        if (!ok) throw EvaluatorFailure("evaluator failed near a cell node");
        acc += rule.weights[q] * val;
      }
      return acc * cell.jac;
    };
    cell.i7 = apply(r7);
    cell.i5 = apply(r5);
    cell.err = std::fabs(cell.i7 - cell.i5);
  };

  auto cmp = [](const Cell& a, const Cell& b) { return a.err < b.err; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

  double total = 0, total_err = 0;
  for (auto& verts : simplices) {
    Cell c;
    c.verts = std::move(verts);
    evaluate_cell(c);
    total += c.i7;
    total_err += c.err;
    queue.push(std::move(c));
  }

  int cells = static_cast<int>(simplices.size());
  while (cells < opts.max_cells) {
    double scale = std::max(std::fabs(total), 1e-300);
    if (total_err <= rel_tol * scale) break;
    Cell worst = queue.top();
    queue.pop();
    total -= worst.i7;
    total_err -= worst.err;
    // bisect longest edge
    int bi = 0, bj = 1;
    double best = -1;
    for (size_t i = 0; i < worst.verts.size(); ++i)
      for (size_t j = i + 1; j < worst.verts.size(); ++j) {
        double len = 0;
        for (int k = 0; k < n; ++k) {
          double d = worst.verts[i][k] - worst.verts[j][k];
          len += d * d;
        }
        if (len > best) {
          best = len;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    std::vector<double> mid(n);
    for (int k = 0; k < n; ++k) mid[k] = 0.5 * (worst.verts[bi][k] + worst.verts[bj][k]);
    for (int rep : {bi, bj}) {
      Cell child;
      child.verts = worst.verts;
      child.verts[rep] = mid;
      evaluate_cell(child);
      total += child.i7;
      total_err += child.err;
      queue.push(std::move(child));
    }
    ++cells;  // net +1 cell per bisection
  }

  result.value = total;
  result.error_estimate = total_err;
  result.cells = cells;
  result.converged = total_err <= rel_tol * std::max(std::fabs(total), 1e-300);
  return result;
}

QuadResult quad_adaptive(const LabeledPolytope& p, const Evaluator& f, double rel_tol,
                         QuadOptions opts) {
  std::vector<std::vector<std::vector<double>>> simplices;
  for (const auto& s : triangulate(p).simplices) {
    std::vector<std::vector<double>> sd;
    for (const auto& v : s) {
      std::vector<double> vd;
      for (const auto& c : v) vd.push_back(to_double(c));
      sd.push_back(std::move(vd));
    }
    simplices.push_back(std::move(sd));
  }
  return quad_adaptive_simplices(std::move(simplices), f, rel_tol, opts);
}

}  // namespace polystab
