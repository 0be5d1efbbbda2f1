#pragma once

#include <optional>

#include "polystab/rational.hpp"

namespace polystab {

// Dense exact linear algebra on tiny matrices (dimensions <= ~8 here).

Rational dot(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rational& c, const RatVec& a);

Rational determinant(RatMat m);

int rank(RatMat m);

/// Affine rank of a point set: rank of {p_i - p_0}.
int affine_rank(const std::vector<RatVec>& points);

/// Unique solution of the square system m x = rhs, or nullopt when singular.
std::optional<RatVec> solve_linear(RatMat m, RatVec rhs);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RatMat> invert(const RatMat& m);

/// Integer vector q with <a, q> = 1 for primitive integer a (extended gcd).
/// Throws std::invalid_argument if the gcd of the entries is not 1.
std::vector<Integer> solve_unit_dot(const std::vector<Integer>& a);

}  // namespace polystab
