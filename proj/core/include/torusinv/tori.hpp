#pragma once

#include "torusinv/etale.hpp"
#include "torusinv/generators.hpp"
#include "torusinv/perms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torusinv {

enum class Backend { Quad, Numeric };

// A value in the splitting field, tagged by backend.
struct FieldValue {
  Backend backend = Backend::Quad;
  QuadExt q;
  NumComplex z;

  NumComplex approx() const;
  bool is_zero_value() const;
  std::string str() const;
};

struct TorusFixture {
  EtaleAlgebra algebra;
  Backend backend = Backend::Quad;
  long d = 0;  // squarefree part of disc(f) for the quadratic backend
  std::vector<QuadExt> quadRoots;
  std::vector<QuadMatrix> quadIdems;
  std::vector<NumComplex> numRoots;
  std::vector<NumMatrix> numIdems;
  PermGroup galois;

  std::size_t n() const { return algebra.n; }
};

// e_i = Π_{j≠i} (X - θ_j)/(θ_i - θ_j) at X = image of x.
template <class T>
std::vector<Matrix<T>> lagrange_idempotents(const Matrix<T>& x, const std::vector<T>& roots) {
  const std::size_t n = roots.size();
  std::vector<Matrix<T>> out;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<T> e = Matrix<T>::identity(x.rows(), roots[0]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      T gap = roots[i] - roots[j];
      if (is_zero(gap)) throw Error(ErrorCode::RepeatedRoots, "roots " + std::to_string(i + 1) + " and " +
                                                                 std::to_string(j + 1) + " coincide");
      Matrix<T> factor = x - Matrix<T>::identity(x.rows(), roots[0]) * roots[j];
      e = e * factor;
      e *= one_like(gap) / gap;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<QuadMatrix> lagrange_idempotents(const EtaleAlgebra& a, const std::vector<QuadExt>& roots);
std::vector<NumMatrix> lagrange_idempotents(const EtaleAlgebra& a, const std::vector<NumComplex>& roots);

// Roots of f with rigorous-ish error radii, sorted by (re, im).
std::vector<NumComplex> numeric_roots(const IntPoly& f);

TorusFixture build_fixture(const IntPoly& f, const std::optional<std::vector<std::string>>& galoisSpec = {},
                           const std::optional<std::vector<RatMatrix>>& orderBasis = {});

FieldValue fixture_psi(const TorusFixture& fx, const Permutation& sigma, const RatMatrix& g);
std::vector<FieldValue> fixture_psi_vector(const TorusFixture& fx, const RatMatrix& g);
FiberReport fixture_fiber_test(const TorusFixture& fx, const RatMatrix& g);

struct EquivarianceResult {
  bool ok = false;
  FieldValue lhs;  // τ applied to Ψ_σ(g)
  FieldValue rhs;  // Ψ_{τστ⁻¹}(g)
};

constexpr double kEquivarianceTol = 1e-9;

EquivarianceResult galois_equivariance_check(const TorusFixture& fx, const RatMatrix& g,
                                             const Permutation& sigma, const Permutation& tau);

// Convergents of x with denominator <= bound; first one within tol.
std::optional<Rational> reconstruct_rational(double x, double tol, const Integer& bound);

struct OrbitProduct {
  std::vector<Permutation> orbit;
  Rational value;
  NumComplex raw;  // numeric product before reconstruction
};

// Default bound: (|disc f| * |det g'|)^{|C|} for g' the primitive integer multiple of g.
OrbitProduct galois_orbit_product(const TorusFixture& fx, const Permutation& sigma0, const RatMatrix& g,
                                  const std::optional<Integer>& denomBound = {});

struct PropagationEntry {
  Permutation tau;
  FieldValue value;
  bool pass = false;
};

struct PropagationReport {
  bool pass = false;
  std::vector<PropagationEntry> entries;
};

// Compares every Ψ_τ(g) with the identity-fiber values; no precondition checks.
PropagationReport propagation_report(const TorusFixture& fx, const RatMatrix& g);

// Requires a 2-transitive Galois group, fixed-point-free σ₀ and Ψ_{σ₀}(g) = 0.
PropagationReport zero_propagation(const TorusFixture& fx, const RatMatrix& g, const Permutation& sigma0);

// Primitive integer matrix proportional to g.
RatMatrix primitive_integer_multiple(const RatMatrix& g);

}  // namespace torusinv
