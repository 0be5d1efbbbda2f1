#include "polystab/lp.hpp"

#include <stdexcept>

namespace polystab {

void LinearProgram::add_constraint(RatVec coeffs, Relation rel, Rational rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars_)
    throw std::invalid_argument("constraint width mismatch");
  constraints_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

// Tableau rows: one per constraint, columns: structural + slack/surplus +
// artificial + rhs. basis_[r] = column basic in row r.
struct Tableau {
  int rows = 0, cols = 0;  // cols excludes rhs
  std::vector<RatVec> a;   // rows x (cols + 1)
  std::vector<int> basis;

  void pivot(int r, int c) {
    Rational piv = a[r][c];
    for (int j = 0; j <= cols; ++j) a[r][j] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }
};

// Bland's rule simplex on a feasible tableau. Returns true at optimum,
// false when unbounded (entering column stored in *unbounded_col).
bool run_simplex(Tableau& t, const RatVec& cost, int* unbounded_col) {
  const int n = t.cols;
  while (true) {
    // Reduced costs: z_j - c_j relative to current basis.
    RatVec y(t.rows);  // basis costs
    for (int i = 0; i < t.rows; ++i) y[i] = cost[t.basis[i]];
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      Rational red = cost[j];
      for (int i = 0; i < t.rows; ++i) red -= y[i] * t.a[i][j];
      if (red < 0) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    Rational best_ratio = 0;
    for (int i = 0; i < t.rows; ++i) {
      if (t.a[i][enter] <= 0) continue;
      Rational ratio = t.a[i][n] / t.a[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      if (unbounded_col) *unbounded_col = enter;
      return false;
    }
    t.pivot(leave, enter);
  }
}

}  // namespace

LpResult LinearProgram::solve() const {
  const int m = static_cast<int>(constraints_.size());
  // Normalize to rhs >= 0, count auxiliary columns.
  std::vector<RatVec> rows(m);
  std::vector<Relation> rels(m);
  RatVec rhs(m);
  for (int i = 0; i < m; ++i) {
    rows[i] = constraints_[i].coeffs;
    rels[i] = constraints_[i].rel;
    rhs[i] = constraints_[i].rhs;
    if (rhs[i] < 0) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      rels[i] = rels[i] == Relation::LE   ? Relation::GE
                : rels[i] == Relation::GE ? Relation::LE
                                          : Relation::EQ;
    }
  }
  int num_slack = 0, num_art = 0;
  for (int i = 0; i < m; ++i) {
    if (rels[i] != Relation::EQ) ++num_slack;
    if (rels[i] != Relation::LE) ++num_art;
  }
  const int n_struct = num_vars_;
  const int n_total = n_struct + num_slack + num_art;

  Tableau t;
  t.rows = m;
  t.cols = n_total;
  t.a.assign(m, RatVec(n_total + 1, Rational(0)));
  t.basis.assign(m, -1);

  int slack_at = n_struct, art_at = n_struct + num_slack;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n_struct; ++j) t.a[i][j] = rows[i][j];
    t.a[i][n_total] = rhs[i];
    if (rels[i] == Relation::LE) {
      t.a[i][slack_at] = 1;
      t.basis[i] = slack_at++;
    } else if (rels[i] == Relation::GE) {
      t.a[i][slack_at] = -1;
      ++slack_at;
      t.a[i][art_at] = 1;
      t.basis[i] = art_at++;
    } else {
      t.a[i][art_at] = 1;
      t.basis[i] = art_at++;
    }
  }

  LpResult res;
  res.objective = 0;

  if (num_art > 0) {
    RatVec phase1(n_total, Rational(0));
    for (int j = n_struct + num_slack; j < n_total; ++j) phase1[j] = 1;
    run_simplex(t, phase1, nullptr);  // phase 1 is always bounded below by 0
    Rational art_sum = 0;
    for (int i = 0; i < m; ++i)
      if (t.basis[i] >= n_struct + num_slack) art_sum += t.a[i][n_total];
    if (art_sum != 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    // Drive any degenerate artificial out of the basis.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < n_struct + num_slack) continue;
      int piv_col = -1;
      for (int j = 0; j < n_struct + num_slack; ++j)
        if (t.a[i][j] != 0) {
          piv_col = j;
          break;
        }
      if (piv_col >= 0) t.pivot(i, piv_col);
      // else: redundant row, keep the zero artificial basic.
    }
  }

  RatVec phase2(n_total, Rational(0));
  for (int j = 0; j < n_struct; ++j) phase2[j] = objective_[j];
  // Forbid re-entering artificials.
  // (cost 0 for slacks, 0 for artificials is fine only when they cannot
  // re-enter; block them with a guard in the entering rule instead.)
  // Simplest exact guard: clear artificial columns entirely.
  if (num_art > 0) {
    for (int i = 0; i < m; ++i)
      for (int j = n_struct + num_slack; j < n_total; ++j)
        if (t.basis[i] != j) t.a[i][j] = 0;
    // Columns zeroed except where basic (redundant rows); such a column has
    // a zero rhs and never leaves, which is harmless.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= n_struct + num_slack) {
        for (int j = 0; j < n_struct + num_slack; ++j) t.a[i][j] = 0;
      }
    }
  }

  int unb_col = -1;
  bool ok = run_simplex(t, phase2, &unb_col);
  if (!ok) {
    res.status = LpStatus::Unbounded;
    res.x.assign(num_vars_, Rational(0));
    res.ray.assign(num_vars_, Rational(0));
    if (unb_col < n_struct) res.ray[unb_col] = 1;
    for (int i = 0; i < t.rows; ++i)
      if (t.basis[i] < n_struct) res.ray[t.basis[i]] = -t.a[i][unb_col];
    for (int i = 0; i < t.rows; ++i)
      if (t.basis[i] < n_struct) res.x[t.basis[i]] = t.a[i][n_total];
    return res;
  }

  res.status = LpStatus::Optimal;
  res.x.assign(num_vars_, Rational(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n_struct) res.x[t.basis[i]] = t.a[i][n_total];
  res.objective = dot(res.x, objective_);
  return res;
}

}  // namespace polystab
