#pragma once

#include "torusinv/rational.hpp"

#include <string>

namespace torusinv {

// a + b*sqrt(d). d == 0 marks a plain rational that adopts the partner's d.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(long d, Rational a, Rational b = 0);
  static QuadExt rational(const Rational& a) { return QuadExt(0, a, 0); }

  long d() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  QuadExt conj() const;
  Rational norm() const;
  bool is_rational() const { return sgn(b_) == 0; }
  double to_double() const;

  QuadExt operator-() const;
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.d_ == y.d_ || sgn(x.b_) == 0);
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

 private:
  long merged_d(const QuadExt& o) const;
  void normalize();

  long d_ = 0;
  Rational a_ = 0;
  Rational b_ = 0;
};

bool is_squarefree(long d);

// Ring of integers test in Q(sqrt d).
bool is_algebraic_integer(const QuadExt& x);

std::string to_string(const QuadExt& x);

inline bool is_zero(const QuadExt& x) { return sgn(x.a()) == 0 && sgn(x.b()) == 0; }
inline QuadExt zero_like(const QuadExt& x) { return QuadExt(x.d(), 0, 0); }
inline QuadExt one_like(const QuadExt& x) { return QuadExt(x.d(), 1, 0); }

}  // namespace torusinv
