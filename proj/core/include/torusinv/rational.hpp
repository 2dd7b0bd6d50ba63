#pragma once

#include <gmpxx.h>

#include <string>

namespace torusinv {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q", "-p/q"; the result is canonical.
Rational parse_rational(const std::string& text);

// Canonical p/q; q must be nonzero.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Always "p/q" form, q > 0.
std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace torusinv
