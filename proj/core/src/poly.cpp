#include "torusinv/poly.hpp"

namespace torusinv {

RatPoly to_rat(const IntPoly& f) {
  RatPoly r;
  r.reserve(f.size());
  for (const auto& c : f) r.emplace_back(c);
  return r;
}

RatPoly trim(RatPoly f) {
  while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
  return f;
}

int degree(const RatPoly& f) { return static_cast<int>(trim(f).size()) - 1; }

RatPoly derivative(const RatPoly& f) {
  RatPoly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * Rational(static_cast<long>(k)));
  return trim(d);
}

RatPoly poly_mod(RatPoly a, const RatPoly& b0) {
  RatPoly b = trim(b0);
  a = trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= q * b[k];
    a.pop_back();
    a = trim(a);
  }
  return a;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    RatPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Rational lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

}  // namespace torusinv
