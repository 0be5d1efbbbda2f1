#include "polystab/affine.hpp"

#include <sstream>

namespace polystab {

double AffineFunction::eval(const std::vector<double>& x) const {
  double s = to_double(constant);
  for (size_t i = 0; i < linear.size(); ++i) s += to_double(linear[i]) * x[i];
  return s;
}

bool AffineFunction::has_integer_linear() const {
  for (const auto& c : linear)
    if (denominator(c) != 1) return false;
  return true;
}

bool AffineFunction::has_primitive_linear() const {
  if (!has_integer_linear()) return false;
  Integer g = 0;
  for (const auto& c : linear) g = boost::multiprecision::gcd(g, numerator(c));
  return g == 1;
}

AffineFunction AffineFunction::operator+(const AffineFunction& o) const {
  return {vec_add(linear, o.linear), constant + o.constant};
}

AffineFunction AffineFunction::operator-(const AffineFunction& o) const {
  return {vec_sub(linear, o.linear), constant - o.constant};
}

AffineFunction AffineFunction::operator-() const {
  return {vec_scale(Rational(-1), linear), -constant};
}

AffineFunction AffineFunction::scaled(const Rational& c) const {
  return {vec_scale(c, linear), c * constant};
}

AffineFunction AffineFunction::compose(const RatMat& a, const RatVec& b) const {
  const size_t ny = a.empty() ? 0 : a[0].size();
  RatVec lin(ny, Rational(0));
  for (size_t i = 0; i < linear.size(); ++i)
    for (size_t j = 0; j < ny; ++j) lin[j] += linear[i] * a[i][j];
  return {std::move(lin), eval(b)};
}

bool AffineFunction::operator<(const AffineFunction& o) const {
  if (linear != o.linear) return linear < o.linear;
  return constant < o.constant;
}

std::string AffineFunction::to_string() const {
  std::ostringstream os;
  os << format_rational(constant);
  for (size_t i = 0; i < linear.size(); ++i)
    if (linear[i] != 0) os << " + " << format_rational(linear[i]) << "*x" << (i + 1);
  return os.str();
}

AffineFunction affine_const(int dim, const Rational& c) {
  return {RatVec(dim, Rational(0)), c};
}

AffineFunction affine_coord(int dim, int k) {
  RatVec lin(dim, Rational(0));
  lin[k] = 1;
  return {std::move(lin), Rational(0)};
}

}  // namespace polystab
