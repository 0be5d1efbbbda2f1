#pragma once

#include <string>

#include "polystab/linalg.hpp"
#include "polystab/rational.hpp"

namespace polystab {

/// L(x) = <linear, x> + constant.
struct AffineFunction {
  RatVec linear;
  Rational constant;

  AffineFunction() : constant(0) {}
  AffineFunction(RatVec lin, Rational c) : linear(std::move(lin)), constant(std::move(c)) {}

  int dim() const { return static_cast<int>(linear.size()); }

  Rational eval(const RatVec& x) const { return dot(linear, x) + constant; }
  double eval(const std::vector<double>& x) const;

  bool has_integer_linear() const;
  /// Integer entries with gcd 1.
  bool has_primitive_linear() const;

  AffineFunction operator+(const AffineFunction& o) const;
  AffineFunction operator-(const AffineFunction& o) const;
  AffineFunction operator-() const;
  AffineFunction scaled(const Rational& c) const;

  /// Pullback under x = A y + b (column-major A given as rows of the map
  /// components): returns L(A y + b) as an affine function of y.
  AffineFunction compose(const RatMat& a, const RatVec& b) const;

  bool operator==(const AffineFunction& o) const {
    return linear == o.linear && constant == o.constant;
  }
  bool operator<(const AffineFunction& o) const;

  std::string to_string() const;
};

/// Constant and coordinate helpers.
AffineFunction affine_const(int dim, const Rational& c);
AffineFunction affine_coord(int dim, int k);

}  // namespace polystab
