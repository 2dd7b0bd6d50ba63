#pragma once

#include "torusinv/matrix.hpp"
#include "torusinv/perms.hpp"

#include <type_traits>
#include <vector>

namespace torusinv {

enum class PsiMode { PGL, SL };

template <class T>
struct PsiVector {
  int n = 0;
  PsiMode mode = PsiMode::PGL;
  std::vector<T> values;  // indexed by perm_index
  T detValue;

  const T& at(const Permutation& s) const { return values[perm_index(s)]; }
};

// Π_i g_{i,σ(i)}
Rational psi1(const Permutation& sigma, const RatMatrix& g);

// sign(σ) Π_i g_{σ(i),i} / det g; SL mode requires det g = 1.
Rational psi0(const Permutation& sigma, const RatMatrix& g, PsiMode mode = PsiMode::PGL);

PsiVector<Rational> psi0_vector(const RatMatrix& g, PsiMode mode = PsiMode::PGL);

std::vector<RatMatrix> diagonal_idempotents(std::size_t n);

constexpr double kNumericAxiomTol = 1e-9;

template <class T>
bool scalar_near_zero(const T& x, double tol) {
  if constexpr (std::is_same_v<T, NumComplex>)
    return x.abs() <= std::max(x.eps(), tol);
  else
    return is_zero(x);
}

template <class T>
bool matrix_near(const Matrix<T>& a, const Matrix<T>& b, double tol) {
  for (std::size_t k = 0; k < a.data().size(); ++k)
    if (!scalar_near_zero(T(a.data()[k] - b.data()[k]), tol)) return false;
  return true;
}

// e_i^2 = e_i, e_i e_j = 0 (i != j), Σ e_i = 1.
template <class T>
void check_idempotents(const std::vector<Matrix<T>>& idems, double tol = kNumericAxiomTol) {
  if (idems.empty()) throw Error(ErrorCode::BadIdempotents, "empty idempotent set");
  const std::size_t n = idems[0].rows();
  const T& model = idems[0](0, 0);
  Matrix<T> zero(n, n, zero_like(model));
  Matrix<T> sum = zero;
  for (std::size_t i = 0; i < idems.size(); ++i) {
    sum += idems[i];
    for (std::size_t j = 0; j < idems.size(); ++j) {
      Matrix<T> p = idems[i] * idems[j];
      if (!matrix_near(p, i == j ? idems[i] : zero, tol))
        throw Error(ErrorCode::BadIdempotents, i == j ? "e_i^2 != e_i" : "e_i e_j != 0");
    }
  }
  if (!matrix_near(sum, Matrix<T>::identity(n, model), tol))
    throw Error(ErrorCode::BadIdempotents, "idempotents do not sum to 1");
}

template <class T>
T checked_det(const Matrix<T>& g) {
  T d = det(g);
  if constexpr (std::is_same_v<T, NumComplex>) {
    if (is_zero(d)) throw Error(ErrorCode::NumericallyIndeterminate, "|det g| is below its error bound");
  } else {
    if (is_zero(d)) throw Error(ErrorCode::SingularMatrix, "det g = 0");
  }
  return d;
}

// det(Σ_i e_{σ(i)} g e_i), no normalization and no axiom checks.
template <class T>
T psi_numerator(const Permutation& sigma, const Matrix<T>& g, const std::vector<Matrix<T>>& idems) {
  const std::size_t n = g.rows();
  Matrix<T> acc(n, n, zero_like(g(0, 0)));
  for (int i = 0; i < sigma.n(); ++i) acc += idems[sigma(i)] * g * idems[i];
  return det(acc);
}

template <class T>
T psi_torus(const Permutation& sigma, const Matrix<T>& g, const std::vector<Matrix<T>>& idems) {
  check_idempotents(idems);
  T d = checked_det(g);
  return psi_numerator(sigma, g, idems) / d;
}

template <class T>
PsiVector<T> psi_torus_vector(const Matrix<T>& g, const std::vector<Matrix<T>>& idems,
                              PsiMode mode = PsiMode::PGL) {
  check_idempotents(idems);
  PsiVector<T> v;
  v.n = static_cast<int>(idems.size());
  v.mode = mode;
  v.detValue = checked_det(g);
  if (mode == PsiMode::SL && !scalar_near_zero(T(v.detValue - one_like(v.detValue)), kNumericAxiomTol))
    throw Error(ErrorCode::PreconditionsFailed, "SL mode requires det g = 1");
  for (const auto& s : all_permutations(v.n)) {
    T num = psi_numerator(s, g, idems);
    v.values.push_back(mode == PsiMode::SL ? num : T(num / v.detValue));
  }
  return v;
}

// Dual-basis form: det(Σ σ.b̌_i g b_i) / det g, where σ acts on b̌_i through
// its expansion b̌_i = Σ_k Trd(b̌_i e_k) e_k.
template <class T>
T psi_torus_dual(const Permutation& sigma, const Matrix<T>& g, const std::vector<Matrix<T>>& basis,
                 const std::vector<Matrix<T>>& dualBasis, const std::vector<Matrix<T>>& idems) {
  check_idempotents(idems);
  T d = checked_det(g);
  const std::size_t n = g.rows();
  Matrix<T> acc(n, n, zero_like(g(0, 0)));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Matrix<T> moved(n, n, zero_like(g(0, 0)));
    for (std::size_t k = 0; k < idems.size(); ++k) {
      T c = trace(Matrix<T>(dualBasis[i] * idems[k]));
      moved += idems[sigma(static_cast<int>(k))] * c;
    }
    acc += moved * g * basis[i];
  }
  return det(acc) / d;
}

struct FiberReport {
  bool fiberTrivial = false;  // Ψ_id = 1 and Ψ_σ = 0 otherwise
  bool commutes = false;      // g commutes with every idempotent
  bool inFiberAndTorus() const { return fiberTrivial && commutes; }
};

template <class T>
FiberReport identity_fiber_test(const Matrix<T>& g, const std::vector<Matrix<T>>& idems) {
  PsiVector<T> v = psi_torus_vector(g, idems);
  FiberReport r;
  r.fiberTrivial = true;
  auto perms = all_permutations(v.n);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    T target = perms[k].is_identity() ? one_like(v.detValue) : zero_like(v.detValue);
    if (!scalar_near_zero(T(v.values[k] - target), kNumericAxiomTol)) r.fiberTrivial = false;
  }
  r.commutes = true;
  for (const auto& e : idems)
    if (!matrix_near(Matrix<T>(g * e), Matrix<T>(e * g), kNumericAxiomTol)) r.commutes = false;
  return r;
}

}  // namespace torusinv
