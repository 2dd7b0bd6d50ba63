#pragma once

#include "torusinv/matrix.hpp"
#include "torusinv/perms.hpp"
#include "torusinv/poly.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using torusinv::Integer;
using torusinv::Rational;
using torusinv::RatMatrix;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng, int num = 9, int den = 5) {
  return torusinv::make_rational(uniform(rng, -num, num), uniform(rng, 1, den));
}

inline RatMatrix random_matrix(Rng& rng, int n, int num = 9, int den = 5) {
  RatMatrix g(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = small_rational(rng, num, den);
  return g;
}

// Sum over all permutations with explicit inversion counting.
inline Rational leibniz_det(const RatMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  Rational acc = 0;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
    Rational t = inv % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) t *= m(i, p[i]);
    acc += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

// Rejection-samples until the determinant is nonzero.
inline RatMatrix random_invertible(Rng& rng, int n, int num = 9, int den = 5) {
  for (;;) {
    RatMatrix g = random_matrix(rng, n, num, den);
    if (leibniz_det(g) != 0) return g;
  }
}

// Rank by plain Gaussian elimination over Q.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

// Cofactor expansion along the first row.
inline Integer laplace(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    Integer t = m[0][c] * laplace(minor);
    acc += c % 2 ? Integer(-t) : t;
  }
  return acc;
}

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') for monic f, via the Sylvester matrix.
inline Integer sylvester_discriminant(const torusinv::IntPoly& f) {
  const std::size_t n = f.size() - 1;
  std::vector<Integer> df;
  for (std::size_t k = 1; k <= n; ++k) df.push_back(f[k] * static_cast<long>(k));
  const std::size_t size = 2 * n - 1;
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, 0));
  for (std::size_t r = 0; r + 1 < n; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[r][r + k] = f[n - k];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) s[n - 1 + r][r + k] = df[n - 1 - k];
  Integer res = laplace(s);
  return (n * (n - 1) / 2) % 2 ? Integer(-res) : res;
}

inline torusinv::IntPoly poly(std::initializer_list<long> c) {
  torusinv::IntPoly f;
  for (long x : c) f.emplace_back(x);
  return f;
}

// Classical Ψ⁰_σ(h) = sign(σ) Π h_{σ(i),i} / det h in complex doubles.
inline std::complex<double> classical_psi(const torusinv::Permutation& s,
                                          const std::vector<std::vector<std::complex<double>>>& h,
                                          std::complex<double> detH) {
  std::complex<double> p = static_cast<double>(s.sign());
  for (int i = 0; i < s.n(); ++i) p *= h[s(i)][i];
  return p / detH;
}

}  // namespace oracle
