#pragma once

#include "torusinv/matrix.hpp"
#include "torusinv/poly.hpp"

#include <optional>
#include <vector>

namespace torusinv {

// Q[x]/(f) in its regular representation on the power basis.
struct EtaleAlgebra {
  IntPoly f;
  std::size_t n = 0;
  RatMatrix xMatrix;                     // image of x (companion matrix)
  std::vector<RatMatrix> basisMatrices;  // images of 1, x, ..., x^{n-1}
  std::vector<RatMatrix> orderBasis;     // defaults to basisMatrices

  bool contains(const RatMatrix& m) const;
};

EtaleAlgebra etale_from_poly(const IntPoly& f);

template <class T>
Matrix<T> trace_gram(const std::vector<Matrix<T>>& basis) {
  const std::size_t n = basis.size();
  Matrix<T> g(n, n, zero_like(basis[0](0, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = trace(Matrix<T>(basis[i] * basis[j]));
      if (j != i) g(j, i) = g(i, j);
    }
  return g;
}

// b̌_i with Trd(b̌_i b_j) = δ_ij.
template <class T>
std::vector<Matrix<T>> dual_basis(const std::vector<Matrix<T>>& basis) {
  Matrix<T> g = trace_gram(basis);
  if (is_zero(det(g))) throw Error(ErrorCode::DegenerateTraceForm, "trace Gram matrix is singular");
  Matrix<T> gi = inverse(g);
  std::vector<Matrix<T>> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Matrix<T> acc(basis[0].rows(), basis[0].cols(), zero_like(basis[0](0, 0)));
    for (std::size_t k = 0; k < basis.size(); ++k) acc += basis[k] * gi(i, k);
    out.push_back(std::move(acc));
  }
  return out;
}

// Verifies that every basis element lies in the algebra, then dualizes.
std::vector<RatMatrix> dual_basis(const EtaleAlgebra& a, const std::vector<RatMatrix>& basis);

// Coordinates of m in the given basis, or nullopt when m is outside its span.
std::optional<std::vector<Rational>> coordinates(const std::vector<RatMatrix>& basis,
                                                 const RatMatrix& m);

}  // namespace torusinv
