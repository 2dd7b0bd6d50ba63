#include "torusinv/errors.hpp"
#include "torusinv/numcomplex.hpp"
#include "torusinv/quadext.hpp"
#include "torusinv/rational.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace torusinv {

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  size_t slash = text.find('/');
  size_t numEnd = slash == std::string::npos ? text.size() : slash;
  if (!all_digits(text, start, numEnd))
    throw Error(ErrorCode::InputParseError, "not a rational: \"" + text + "\"");
  Integer num(text.substr(start, numEnd - start));
  Integer den(1);
  if (slash != std::string::npos) {
    if (!all_digits(text, slash + 1, text.size()))
      throw Error(ErrorCode::InputParseError, "not a rational: \"" + text + "\"");
    den = Integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InputParseError, "zero denominator: \"" + text + "\"");
  }
  if (text[0] == '-') num = -num;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---- QuadExt ----

QuadExt::QuadExt(long d, Rational a, Rational b) : d_(d), a_(std::move(a)), b_(std::move(b)) {
  normalize();
}

void QuadExt::normalize() {
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

long QuadExt::merged_d(const QuadExt& o) const {
  if (d_ == 0) return o.d_;
  if (o.d_ == 0 || o.d_ == d_) return d_;
  if (sgn(o.b_) == 0) return d_;
  if (sgn(b_) == 0) return o.d_;
  throw std::logic_error("QuadExt: mixing fields of different d");
}

QuadExt QuadExt::conj() const { return QuadExt(d_, a_, -b_); }

Rational QuadExt::norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

double QuadExt::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

QuadExt QuadExt::operator-() const { return QuadExt(d_, -a_, -b_); }

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  d_ = merged_d(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  d_ = merged_d(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  d_ = merged_d(o);
  Rational na = a_ * o.a_ + Rational(d_) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  long d = merged_d(o);
  QuadExt denom(d, o.a_, o.b_);
  Rational n = denom.norm();
  if (sgn(n) == 0) throw Error(ErrorCode::SingularMatrix, "division by zero in Q(sqrt d)");
  *this *= denom.conj();
  a_ /= n;
  b_ /= n;
  return *this;
}

bool is_squarefree(long d) {
  if (d == 0) return false;
  unsigned long m = static_cast<unsigned long>(d < 0 ? -d : d);
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    while (m % p == 0) m /= p;
  }
  return true;
}

bool is_algebraic_integer(const QuadExt& x) {
  long d = x.d();
  long r = ((d % 4) + 4) % 4;
  if (r != 1 || d == 0) return is_integer(x.a()) && is_integer(x.b());
  Rational a2 = x.a() * 2, b2 = x.b() * 2;
  if (!is_integer(a2) || !is_integer(b2)) return false;
  Integer diff = a2.get_num() - b2.get_num();
  return mpz_even_p(diff.get_mpz_t()) != 0;
}

std::string to_string(const QuadExt& x) {
  if (sgn(x.b()) == 0) return to_string(x.a());
  return to_string(x.a()) + "+" + to_string(x.b()) + "*sqrt(" + std::to_string(x.d()) + ")";
}

// ---- NumComplex ----

NumComplex NumComplex::from_rational(const Rational& r) {
  double v = r.get_d();
  return NumComplex(v, 0.0, 2.0 * kUnit * std::abs(v) + std::numeric_limits<double>::denorm_min());
}

NumComplex& NumComplex::operator+=(const NumComplex& o) {
  v_ += o.v_;
  eps_ = eps_ + o.eps_ + 2.0 * kUnit * std::abs(v_);
  return *this;
}

NumComplex& NumComplex::operator-=(const NumComplex& o) {
  v_ -= o.v_;
  eps_ = eps_ + o.eps_ + 2.0 * kUnit * std::abs(v_);
  return *this;
}

NumComplex& NumComplex::operator*=(const NumComplex& o) {
  double ma = std::abs(v_), mb = std::abs(o.v_);
  double prop = ma * o.eps_ + mb * eps_ + eps_ * o.eps_;
  v_ *= o.v_;
  eps_ = prop + 4.0 * kUnit * ma * mb;
  return *this;
}

NumComplex& NumComplex::operator/=(const NumComplex& o) {
  double ma = std::abs(v_), mb = std::abs(o.v_);
  if (mb <= o.eps_) {
    v_ /= o.v_;
    eps_ = std::numeric_limits<double>::infinity();
    return *this;
  }
  double prop = (eps_ * mb + ma * o.eps_) / (mb * (mb - o.eps_));
  v_ /= o.v_;
  eps_ = prop + 8.0 * kUnit * ma / mb;
  return *this;
}

bool near(const NumComplex& x, const NumComplex& y, double tol) {
  double diff = std::abs(x.value() - y.value());
  return diff <= std::max(x.eps() + y.eps(), tol);
}

std::string to_string(const NumComplex& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", x.re(), x.im());
  return buf;
}

}  // namespace torusinv
