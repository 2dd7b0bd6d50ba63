#pragma once

#include "torusinv/rational.hpp"

#include <complex>
#include <string>

namespace torusinv {

// Complex double with a first-order forward error bound: the exact value lies
// within eps of value().
class NumComplex {
 public:
  static constexpr double kUnit = 1.1102230246251565e-16;  // 2^-53
  static constexpr double kZeroFloor = 1e-12;

  NumComplex() = default;
  NumComplex(double re, double im = 0.0, double eps = 0.0) : v_(re, im), eps_(eps) {}
  NumComplex(std::complex<double> v, double eps) : v_(v), eps_(eps) {}
  static NumComplex from_rational(const Rational& r);

  std::complex<double> value() const { return v_; }
  double re() const { return v_.real(); }
  double im() const { return v_.imag(); }
  double eps() const { return eps_; }
  double abs() const { return std::abs(v_); }

  NumComplex operator-() const { return NumComplex(-v_, eps_); }
  NumComplex& operator+=(const NumComplex& o);
  NumComplex& operator-=(const NumComplex& o);
  NumComplex& operator*=(const NumComplex& o);
  NumComplex& operator/=(const NumComplex& o);

  friend NumComplex operator+(NumComplex x, const NumComplex& y) { return x += y; }
  friend NumComplex operator-(NumComplex x, const NumComplex& y) { return x -= y; }
  friend NumComplex operator*(NumComplex x, const NumComplex& y) { return x *= y; }
  friend NumComplex operator/(NumComplex x, const NumComplex& y) { return x /= y; }

  NumComplex conj() const { return NumComplex(std::conj(v_), eps_); }

 private:
  std::complex<double> v_{0.0, 0.0};
  double eps_ = 0.0;
};

inline bool is_zero(const NumComplex& x) {
  return x.abs() <= std::max(x.eps(), NumComplex::kZeroFloor);
}
inline NumComplex zero_like(const NumComplex&) { return NumComplex(0.0); }
inline NumComplex one_like(const NumComplex&) { return NumComplex(1.0); }

// True when |x - y| is within the combined error bound or tol.
bool near(const NumComplex& x, const NumComplex& y, double tol);

std::string to_string(const NumComplex& x);

}  // namespace torusinv
