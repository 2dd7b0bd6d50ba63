#include "torusinv/etale.hpp"

namespace torusinv {

bool EtaleAlgebra::contains(const RatMatrix& m) const {
  return m.rows() == n && m.cols() == n && m * xMatrix == xMatrix * m;
}

EtaleAlgebra etale_from_poly(const IntPoly& f) {
  if (f.size() < 2) throw Error(ErrorCode::InputParseError, "polynomial must have degree >= 1");
  if (f.back() != 1) throw Error(ErrorCode::InputParseError, "polynomial must be monic");
  RatPoly fr = to_rat(f);
  RatPoly g = poly_gcd(fr, derivative(fr));
  if (g.size() > 1) throw Error(ErrorCode::NotSquarefree, "gcd(f, f') has positive degree");

  EtaleAlgebra a;
  a.f = f;
  a.n = f.size() - 1;
  const std::size_t n = a.n;
  a.xMatrix = RatMatrix(n, n, Rational(0));
  for (std::size_t j = 0; j + 1 < n; ++j) a.xMatrix(j + 1, j) = 1;
  for (std::size_t k = 0; k < n; ++k) a.xMatrix(k, n - 1) = Rational(-f[k]);
  RatMatrix p = RatMatrix::identity(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    a.basisMatrices.push_back(p);
    p = p * a.xMatrix;
  }
  a.orderBasis = a.basisMatrices;
  return a;
}

std::vector<RatMatrix> dual_basis(const EtaleAlgebra& a, const std::vector<RatMatrix>& basis) {
  if (basis.size() != a.n) throw Error(ErrorCode::DegenerateTraceForm, "basis has wrong size");
  for (const auto& b : basis)
    if (!a.contains(b)) throw Error(ErrorCode::DegenerateTraceForm, "basis element outside the algebra");
  return dual_basis(basis);
}

std::optional<std::vector<Rational>> coordinates(const std::vector<RatMatrix>& basis,
                                                 const RatMatrix& m) {
  std::vector<RatMatrix> dual = dual_basis(basis);
  std::vector<Rational> c;
  RatMatrix back(m.rows(), m.cols(), Rational(0));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    c.push_back(trace(RatMatrix(m * dual[k])));
    back += basis[k] * c.back();
  }
  if (back != m) return std::nullopt;
  return c;
}

}  // namespace torusinv
