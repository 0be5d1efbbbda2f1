#include "polystab/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polystab {

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(Exponents(dim, 0), c);
  return p;
}

Polynomial Polynomial::coordinate(int dim, int k) {
  Polynomial p(dim);
  Exponents e(dim, 0);
  e[k] = 1;
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::from_affine(const AffineFunction& a) {
  Polynomial p(a.dim());
  p.add_term(Exponents(a.dim(), 0), a.constant);
  for (int k = 0; k < a.dim(); ++k) {
    Exponents e(a.dim(), 0);
    e[k] = 1;
    p.add_term(e, a.linear[k]);
  }
  return p;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(dim_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(dim_);
      for (int i = 0; i < dim_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(dim_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, c * k);
  return r;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial r = Polynomial::constant(dim_, Rational(1));
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

Rational Polynomial::eval(const RatVec& x) const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

double Polynomial::eval(const std::vector<double>& x) const {
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Polynomial Polynomial::derivative(int k) const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents d = e;
    d[k] -= 1;
    r.add_term(d, c * e[k]);
  }
  return r;
}

Polynomial Polynomial::compose_affine(const std::vector<AffineFunction>& subs) const {
  if (static_cast<int>(subs.size()) != dim_)
    throw std::invalid_argument("compose_affine: substitution count mismatch");
  const int ny = subs.empty() ? 0 : subs[0].dim();
  std::vector<Polynomial> lin;
  lin.reserve(subs.size());
  for (const auto& a : subs) lin.push_back(Polynomial::from_affine(a));
  Polynomial r(ny);
  for (const auto& [e, c] : terms_) {
    Polynomial t = Polynomial::constant(ny, c);
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < e[i]; ++k) t = t * lin[i];
    r = r + t;
  }
  return r;
}

std::optional<Polynomial> Polynomial::divide_by_affine(const AffineFunction& a) const {
  // Change coordinates so the divisor becomes a coordinate, split off its
  // linear part, and map back.
  int k = -1;
  for (int i = 0; i < dim_; ++i)
    if (a.linear[i] != 0) {
      k = i;
      break;
    }
  if (k < 0) {
    if (a.constant == 0) return std::nullopt;
    return scaled(Rational(1) / a.constant);
  }
  // y_k = L(x), y_i = x_i otherwise; invert for x_k.
  std::vector<AffineFunction> fwd;  // x in terms of y
  for (int i = 0; i < dim_; ++i) {
    if (i != k) {
      fwd.push_back(affine_coord(dim_, i));
      continue;
    }
    // x_k = (y_k - c - sum_{i != k} a_i y_i) / a_k
    RatVec lin(dim_, Rational(0));
    lin[k] = Rational(1) / a.linear[k];
    for (int i2 = 0; i2 < dim_; ++i2)
      if (i2 != k) lin[i2] = -a.linear[i2] / a.linear[k];
    fwd.push_back(AffineFunction(lin, -a.constant / a.linear[k]));
  }
  Polynomial tilde = compose_affine(fwd);
  Polynomial q(dim_);
  for (const auto& [e, c] : tilde.terms()) {
    if (e[k] == 0) return std::nullopt;  // nonzero remainder
    Exponents d = e;
    d[k] -= 1;
    q.add_term(d, c);
  }
  // Map back: y_k = L(x), y_i = x_i.
  std::vector<AffineFunction> back;
  for (int i = 0; i < dim_; ++i) back.push_back(i == k ? a : affine_coord(dim_, i));
  return q.compose_affine(back);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_rational(c);
    for (int i = 0; i < dim_; ++i)
      if (e[i] > 0) {
        os << "*x" << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
      }
  }
  return os.str();
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    exps.push_back(e);
    coefs.push_back(to_double(c));
  }
}

double CompiledPolynomial::eval(const std::vector<double>& x) const {
  double s = 0;
  for (size_t t = 0; t < coefs.size(); ++t) {
    double v = coefs[t];
    const auto& e = exps[t];
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) v *= x[i];
    s += v;
  }
  return s;
}

}  // namespace polystab
