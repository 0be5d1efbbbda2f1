#include "polystab/log_integrals.hpp"

#include <algorithm>
#include <cmath>

namespace polystab {

namespace {

// int_0^1 u^a (1-u)^b log u du, exact.
Rational beta_log(int a, int b) {
  Rational s = 0;
  for (int k = 0; k <= b; ++k) {
    Rational term = binomial(b, k) / (Rational(a + k + 1) * Rational(a + k + 1));
    s += (k % 2 == 0) ? -term : term;
  }
  return s;
}

// Involution of the standard simplex exchanging label 0 and coordinate
// label c: x_c = 1 - sum y, x_j = y_j otherwise.
std::vector<AffineFunction> swap_zero_map(int dim, int c) {
  std::vector<AffineFunction> subs;
  for (int j = 1; j <= dim; ++j) {
    if (j == c) {
      subs.push_back({RatVec(dim, Rational(-1)), Rational(1)});
    } else {
      subs.push_back(affine_coord(dim, j - 1));
    }
  }
  return subs;
}

// Inclusion of the facet {x_c = 0} (coordinate labels shift down past c).
std::vector<AffineFunction> drop_coordinate_map(int dim, int c) {
  std::vector<AffineFunction> subs;
  int at = 0;
  for (int j = 1; j <= dim; ++j) {
    if (j == c) {
      subs.push_back(affine_const(dim - 1, Rational(0)));
    } else {
      subs.push_back(affine_coord(dim - 1, at++));
    }
  }
  return subs;
}

}  // namespace

AffineFunction subset_affine(int dim, const std::vector<int>& subset) {
  AffineFunction s = affine_const(dim, Rational(0));
  for (int i : subset) {
    if (i == 0) {
      s = s + AffineFunction(RatVec(dim, Rational(-1)), Rational(1));
    } else {
      s = s + affine_coord(dim, i - 1);
    }
  }
  return s;
}

Rational integrate_log_subset(const Polynomial& q, std::vector<int> subset) {
  const int n = q.dim();
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty()) throw std::invalid_argument("empty label subset");
  if (static_cast<int>(subset.size()) == n + 1) return Rational(0);  // log 1

  Polynomial work = q;
  if (!subset.empty() && subset.front() == 0) {
    int c = 0;
    for (int cand = 1; cand <= n; ++cand)
      if (!std::binary_search(subset.begin(), subset.end(), cand)) {
        c = cand;
        break;
      }
    work = work.compose_affine(swap_zero_map(n, c));
    std::vector<int> swapped;
    for (int i : subset)
      if (i != 0) swapped.push_back(i);
    swapped.push_back(c);
    std::sort(swapped.begin(), swapped.end());
    subset = std::move(swapped);
  }

  const int s = static_cast<int>(subset.size());
  const int m = n - s;
  std::vector<bool> in_s(n + 1, false);
  for (int i : subset) in_s[i] = true;

  Rational total = 0;
  for (const auto& [e, c] : work.terms()) {
    int deg_s = 0, deg_c = 0;
    Rational dirichlet_s = 1, dirichlet_c = 1;
    for (int j = 1; j <= n; ++j) {
      if (in_s[j]) {
        deg_s += e[j - 1];
        dirichlet_s *= factorial(e[j - 1]);
      } else {
        deg_c += e[j - 1];
        dirichlet_c *= factorial(e[j - 1]);
      }
    }
    dirichlet_s /= factorial(s - 1 + deg_s);
    dirichlet_c /= factorial(m + deg_c);
    total += c * dirichlet_s * dirichlet_c * beta_log(s - 1 + deg_s, m + deg_c);
  }
  return total;
}

Rational integrate_log_subset_facet(const Polynomial& q, std::vector<int> subset,
                                    int facet_label) {
  const int n = q.dim();
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());

  if (facet_label == 0) {
    // Swap label 0 with some coordinate outside the subset if possible,
    // else with any coordinate (the subset transforms accordingly).
    int c = 1;
    for (int cand = 1; cand <= n; ++cand)
      if (!std::binary_search(subset.begin(), subset.end(), cand)) {
        c = cand;
        break;
      }
    Polynomial work = q.compose_affine(swap_zero_map(n, c));
    std::vector<int> swapped;
    bool had_zero = false, had_c = false;
    for (int i : subset) {
      if (i == 0) had_zero = true;
      else if (i == c) had_c = true;
      else swapped.push_back(i);
    }
    if (had_zero) swapped.push_back(c);
    if (had_c) swapped.push_back(0);
    std::sort(swapped.begin(), swapped.end());
    return integrate_log_subset_facet(work, swapped, c);
  }

  Polynomial restricted = q.compose_affine(drop_coordinate_map(n, facet_label));
  std::vector<int> sub2;
  for (int i : subset) {
    if (i == facet_label) continue;
    sub2.push_back(i > facet_label ? i - 1 : i);
  }
  if (sub2.empty()) {
    if (!restricted.is_zero())
      throw Error("divergent log integral: subset collapses on facet");
    return Rational(0);
  }
  if (n - 1 == 0) {
    // Zero-dimensional facet (interval endpoint): S restricts to a positive
    // constant there; evaluate directly.
    Rational sval = 0;
    for (int i : sub2) sval += (i == 0) ? Rational(1) : Rational(0);
    // On a point, subset must contain label 0 (value 1, log 0) or collapse.
    if (sval == 0)
      throw Error("divergent log integral at interval endpoint");
    return Rational(0);  // log(1) = 0
  }
  return integrate_log_subset(restricted, sub2);
}

void LogLinComb::add_log_term(const Rational& coef, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (auto& [c, s] : log_terms)
    if (s == subset) {
      c += coef;
      return;
    }
  log_terms.emplace_back(coef, std::move(subset));
}

LogLinComb LogLinComb::operator+(const LogLinComb& o) const {
  LogLinComb r = *this;
  r.poly = r.poly + o.poly;
  for (const auto& [c, s] : o.log_terms) r.add_log_term(c, s);
  return r;
}

double LogLinComb::eval(const std::vector<double>& x) const {
  double v = poly.eval(x);
  for (const auto& [c, s] : log_terms) {
    double sum = 0;
    for (int i : s) {
      if (i == 0) {
        double l0 = 1;
        for (double xi : x) l0 -= xi;
        sum += l0;
      } else {
        sum += x[i - 1];
      }
    }
    if (sum > 0) v += to_double(c) * sum * std::log(sum);
  }
  return v;
}

LogLinComb guillemin_log_comb(int dim) {
  LogLinComb g(dim);
  for (int i = 0; i <= dim; ++i) g.add_log_term(Rational(1, 2), {i});
  return g;
}

Rational futaki_log_comb(const LogLinComb& h, const Polynomial& v, const Polynomial& w) {
  const int n = h.dim;
  LabeledPolytope simplex = standard_simplex(n);

  Rational interior = integrate_polynomial(simplex, h.poly * w);
  for (const auto& [c, s] : h.log_terms) {
    Polynomial saff = Polynomial::from_affine(subset_affine(n, s));
    interior += c * integrate_log_subset(w * saff, s);
  }

  Rational boundary = 0;
  // Labels of standard_simplex(n) are ordered: index 0 is 1 - sum x,
  // index k is x_k; this matches the log-subset label indexing.
  for (int lab = 0; lab <= n; ++lab) {
    boundary += integrate_facet(simplex, lab, h.poly * v);
    for (const auto& [c, s] : h.log_terms) {
      Polynomial saff = Polynomial::from_affine(subset_affine(n, s));
      boundary += c * integrate_log_subset_facet(v * saff, s, lab);
    }
  }
  return 2 * boundary - interior;
}

}  // namespace polystab
