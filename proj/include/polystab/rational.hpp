#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace polystab {

/// Exact rational scalar used for all polytope combinatorics and identities.
/// GMP keeps values canonical (reduced, positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument on
/// malformed input or zero denominator.
Rational parse_rational(const std::string& s);

/// Canonical "p/q" form, denominator always printed ("3/1", "-48/13").
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

Integer floor_rational(const Rational& r);
Integer ceil_rational(const Rational& r);

Rational rational_abs(const Rational& r);

/// Exact factorial as a Rational (n small).
Rational factorial(int n);

/// Exact binomial coefficient.
Rational binomial(int n, int k);

}  // namespace polystab
