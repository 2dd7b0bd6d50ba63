#pragma once

#include "torusinv/rational.hpp"

#include <vector>

namespace torusinv {

// Coefficients constant term first.
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

RatPoly to_rat(const IntPoly& f);
int degree(const RatPoly& f);
RatPoly trim(RatPoly f);
RatPoly derivative(const RatPoly& f);
RatPoly poly_mod(RatPoly a, const RatPoly& b);
// Monic gcd; the zero polynomial yields an empty vector.
RatPoly poly_gcd(RatPoly a, RatPoly b);

}  // namespace torusinv
