#include "polystab/linalg.hpp"

#include <stdexcept>

namespace polystab {

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec vec_scale(const Rational& c, const RatVec& a) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

Rational determinant(RatMat m) {
  const size_t n = m.size();
  if (n == 0) return Rational(1);
  Rational det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

int rank(RatMat m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t rk = 0;
  for (size_t col = 0; col < cols && rk < rows; ++col) {
    size_t pivot = rk;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rk]);
    for (size_t r = rk + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rk][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[rk][c];
    }
    ++rk;
  }
  return static_cast<int>(rk);
}

int affine_rank(const std::vector<RatVec>& points) {
  if (points.size() <= 1) return 0;
  RatMat diffs;
  for (size_t i = 1; i < points.size(); ++i)
    diffs.push_back(vec_sub(points[i], points[0]));
  return rank(diffs);
}

std::optional<RatVec> solve_linear(RatMat m, RatVec rhs) {
  const size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

std::optional<RatMat> invert(const RatMat& m) {
  const size_t n = m.size();
  RatMat a = m;
  RatMat inv(n, RatVec(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational d = a[col][col];
    for (size_t c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

std::vector<Integer> solve_unit_dot(const std::vector<Integer>& a) {
  // Running extended gcd across the entries.
  const size_t n = a.size();
  std::vector<Integer> q(n, Integer(0));
  Integer g = 0;
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    if (g == 0) {
      g = boost::multiprecision::abs(a[i]);
      q[i] = a[i] > 0 ? 1 : -1;
      continue;
    }
    // g_new = s*g + t*a[i]
    Integer old_r = g, r = boost::multiprecision::abs(a[i]);
    Integer old_s = 1, s = 0;
    while (r != 0) {
      Integer quot = old_r / r;
      Integer tmp = old_r - quot * r;
      old_r = r;
      r = tmp;
      tmp = old_s - quot * s;
      old_s = s;
      s = tmp;
    }
    Integer t = (old_r - old_s * g) / boost::multiprecision::abs(a[i]);
    for (size_t j = 0; j <= i; ++j) q[j] *= old_s;
    q[i] = (a[i] > 0) ? t : -t;
    g = old_r;
  }
  if (g != 1) throw std::invalid_argument("normal vector is not primitive");
  return q;
}

}  // namespace polystab
