#include "torusinv/generators.hpp"

namespace torusinv {

Rational psi1(const Permutation& sigma, const RatMatrix& g) {
  Rational p = 1;
  for (int i = 0; i < sigma.n(); ++i) p *= g(i, sigma(i));
  return p;
}

Rational psi0(const Permutation& sigma, const RatMatrix& g, PsiMode mode) {
  Rational d = det(g);
  if (is_zero(d)) throw Error(ErrorCode::SingularMatrix, "det g = 0");
  if (mode == PsiMode::SL && d != 1) throw Error(ErrorCode::PreconditionsFailed, "SL mode requires det g = 1");
  Rational p = sigma.sign();
  for (int i = 0; i < sigma.n(); ++i) p *= g(sigma(i), i);
  return mode == PsiMode::SL ? p : Rational(p / d);
}

PsiVector<Rational> psi0_vector(const RatMatrix& g, PsiMode mode) {
  PsiVector<Rational> v;
  v.n = static_cast<int>(g.rows());
  v.mode = mode;
  v.detValue = det(g);
  for (const auto& s : all_permutations(v.n)) v.values.push_back(psi0(s, g, mode));
  return v;
}

std::vector<RatMatrix> diagonal_idempotents(std::size_t n) {
  std::vector<RatMatrix> out;
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix e(n, n, Rational(0));
    e(i, i) = 1;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace torusinv
