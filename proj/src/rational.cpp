#include "polystab/rational.hpp"

#include <stdexcept>

namespace polystab {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(s));
    }
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num) / Rational(den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Integer floor_rational(const Rational& r) {
  Integer n = numerator(r), d = denominator(r);
  Integer q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

Integer ceil_rational(const Rational& r) { return -floor_rational(-r); }

Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Integer num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return Rational(num) / Rational(den);
}

}  // namespace polystab
