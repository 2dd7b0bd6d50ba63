#include "torusinv/discriminants.hpp"

#include <cmath>

namespace torusinv {

namespace {

void require(bool cond, const std::string& why) {
  if (!cond) throw Error(ErrorCode::NotAnOrder, why);
}

Eigen::MatrixXcd to_eigen(const NumMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).value();
  return e;
}

Eigen::VectorXcd vec(const NumMatrix& m) {
  Eigen::VectorXcd v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j).value();
  return v;
}

Eigen::MatrixXcd q_gram(const std::vector<NumMatrix>& basis, const HermitianForm& q) {
  const std::size_t k = basis.size();
  Eigen::MatrixXcd g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Eigen::VectorXcd a = vec(basis[i]), b = vec(basis[j]);
      g(i, j) = q.size() == 0 ? a.dot(b) : a.dot(q * b);  // dot conjugates the left factor
    }
  return g;
}

Eigen::MatrixXcd trd_gram(const std::vector<NumMatrix>& basis) {
  const std::size_t k = basis.size();
  Eigen::MatrixXcd g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = (to_eigen(basis[i]) * to_eigen(basis[j])).trace();
  return g;
}

void check_form(const HermitianForm& q, std::size_t dim) {
  if (q.size() == 0) return;
  if (static_cast<std::size_t>(q.rows()) != dim || static_cast<std::size_t>(q.cols()) != dim)
    throw Error(ErrorCode::DegenerateQ, "Q has wrong dimension");
  if ((q - q.adjoint()).norm() > 1e-9 * std::max(1.0, q.norm())) throw Error(ErrorCode::DegenerateQ, "Q not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q);
  if (es.eigenvalues().minCoeff() <= 0) throw Error(ErrorCode::DegenerateQ, "Q not positive definite");
}

}  // namespace

Integer order_discriminant(const std::vector<RatMatrix>& basis) {
  require(!basis.empty(), "empty basis");
  for (const auto& a : basis)
    for (const auto& b : basis) require(a * b == b * a, "basis elements do not commute");
  RatMatrix gram = trace_gram(basis);
  for (const auto& x : gram.data()) require(is_integer(x), "trace Gram matrix has non-integer entries");
  Rational d = det(gram);
  require(!is_zero(d), "trace form is degenerate");
  auto one = coordinates(basis, RatMatrix::identity(basis[0].rows(), Rational(0)));
  require(one.has_value(), "1 is not in the span");
  for (const auto& c : *one) require(is_integer(c), "1 is not in the Z-span");
  for (const auto& a : basis)
    for (const auto& b : basis) {
      auto c = coordinates(basis, a * b);
      require(c.has_value(), "products leave the span");
      for (const auto& x : *c) require(is_integer(x), "basis is not multiplicatively closed over Z");
    }
  return d.get_num();
}

OrderData make_order(const EtaleAlgebra& a, const std::vector<RatMatrix>& basis) {
  for (const auto& b : basis) require(a.contains(b), "basis element outside the algebra");
  require(basis.size() == a.n, "basis has wrong size");
  return OrderData{a, basis, order_discriminant(basis)};
}

OrderData make_order(const EtaleAlgebra& a) { return make_order(a, a.orderBasis); }

double archimedean_discriminant(const std::vector<NumMatrix>& basis, const HermitianForm& q) {
  const std::size_t n = basis[0].rows();
  check_form(q, n * n);
  std::complex<double> dq = q_gram(basis, q).determinant();
  std::complex<double> dt = trd_gram(basis).determinant();
  if (std::abs(dt) <= 1e-300) throw Error(ErrorCode::DegenerateQ, "trace form degenerate on basis");
  if (dq.real() <= 0) throw Error(ErrorCode::DegenerateQ, "Q Gram determinant not positive");
  return dq.real() / std::abs(dt);
}

double archimedean_discriminant_trace_zero(const std::vector<NumMatrix>& basis, const HermitianForm& q) {
  const std::size_t n = basis[0].rows();
  check_form(q, n * n);
  std::vector<NumMatrix> tz;
  NumComplex nInv(1.0 / static_cast<double>(n));
  for (std::size_t i = 1; i < basis.size(); ++i) {
    NumComplex t = trace(basis[i]) * nInv;
    tz.push_back(basis[i] - NumMatrix::identity(n, t) * t);
  }
  std::complex<double> dq = q_gram(tz, q).determinant();
  std::complex<double> dt = trd_gram(tz).determinant();
  if (std::abs(dt) <= 1e-300) throw Error(ErrorCode::DegenerateQ, "trace form degenerate on basis");
  return dq.real() / std::abs(dt);
}

Eigen::MatrixXcd GramFactorization::reconstruct() const {
  Eigen::VectorXd s2 = S.array().square();
  return U * s2.asDiagonal() * U.adjoint();
}

GramFactorization gram_sqrt(const Eigen::MatrixXcd& gram, double tol) {
  if ((gram - gram.adjoint()).norm() > tol * std::max(1.0, gram.norm()))
    throw Error(ErrorCode::NotHermitian, "Gram matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
    throw Error(ErrorCode::NotPositive, "Gram matrix is not positive definite");
  GramFactorization f;
  f.U = es.eigenvectors();
  f.S = es.eigenvalues().array().sqrt();
  return f;
}

namespace {

// Characteristic polynomial of x over Q via its Galois conjugates; x is an
// algebraic integer iff all coefficients are rational integers.
bool conjugates_integral(const std::vector<NumComplex>& conjs) {
  std::vector<NumComplex> coeff{NumComplex(1.0)};
  for (const auto& c : conjs) {
    std::vector<NumComplex> next(coeff.size() + 1, NumComplex(0.0));
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      next[k + 1] += coeff[k];
      next[k] -= coeff[k] * c;
    }
    coeff = std::move(next);
  }
  for (const auto& c : coeff) {
    double tol = std::max(10 * c.eps(), 1e-9 * std::max(1.0, c.abs()));
    if (std::abs(c.im()) > tol || std::abs(c.re() - std::round(c.re())) > tol) return false;
  }
  return true;
}

}  // namespace

CertificateReport integrality_certificate(const RatMatrix& lambda, const TorusFixture& fx, const OrderData& o,
                                          bool ramified) {
  CertificateReport rep;
  const int n = static_cast<int>(fx.n());
  rep.D = abs(o.relDisc);
  rep.ramified = ramified;
  rep.exponent = ramified ? 1 + (n + 1) / 2 : 1;
  if (ramified && n % 2 == 1) rep.note = "exponent 1+n/2 rounded up to " + std::to_string(rep.exponent);
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), rep.D.get_mpz_t(), rep.exponent);
  rep.pass = true;
  auto perms = all_permutations(n);
  for (const auto& s : perms) {
    CertificateEntry e;
    e.sigma = s;
    if (fx.backend == Backend::Quad) {
      QuadExt w = fixture_psi(fx, s, lambda).q * QuadExt(fx.d, Rational(scale));
      e.witness = to_string(w);
      e.integral = is_algebraic_integer(w);
    } else {
      NumComplex k = NumComplex::from_rational(Rational(scale));
      NumComplex w = fixture_psi(fx, s, lambda).z * k;
      std::vector<NumComplex> conjs;
      for (const auto& t : fx.galois) conjs.push_back(fixture_psi(fx, conjugate(t, s), lambda).z * k);
      e.witness = to_string(w);
      e.integral = conjugates_integral(conjs);
    }
    rep.pass = rep.pass && e.integral;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace torusinv
