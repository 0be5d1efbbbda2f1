#pragma once

#include <map>
#include <optional>
#include <vector>

#include "polystab/affine.hpp"

namespace polystab {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are keyed by exponent vectors of length dim(); zero coefficients
/// are never stored.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(int dim = 0) : dim_(dim) {}
  static Polynomial constant(int dim, const Rational& c);
  static Polynomial coordinate(int dim, int k);
  static Polynomial from_affine(const AffineFunction& a);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  void add_term(const Exponents& e, const Rational& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(int k) const;

  Rational eval(const RatVec& x) const;
  double eval(const std::vector<double>& x) const;

  Polynomial derivative(int k) const;

  /// Substitutes x_i = subs[i](y): the pullback under an affine map into a
  /// space of dimension subs[0].dim().
  Polynomial compose_affine(const std::vector<AffineFunction>& subs) const;

  /// Exact quotient by an affine factor; nullopt when the division leaves a
  /// remainder.
  std::optional<Polynomial> divide_by_affine(const AffineFunction& a) const;

  bool operator==(const Polynomial& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

  std::string to_string() const;

 private:
  int dim_;
  TermMap terms_;
};

/// Flattened coefficient view for fast repeated double evaluation.
struct CompiledPolynomial {
  std::vector<std::vector<int>> exps;
  std::vector<double> coefs;

  explicit CompiledPolynomial(const Polynomial& p);
  double eval(const std::vector<double>& x) const;
};

}  // namespace polystab
