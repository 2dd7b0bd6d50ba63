#pragma once

#include "torusinv/tori.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace torusinv {

struct OrderData {
  EtaleAlgebra algebra;
  std::vector<RatMatrix> basis;
  Integer relDisc;
};

// det(Trd(b_i b_j)) for a Z-basis of an order.
Integer order_discriminant(const std::vector<RatMatrix>& basis);
OrderData make_order(const EtaleAlgebra& a, const std::vector<RatMatrix>& basis);
OrderData make_order(const EtaleAlgebra& a);  // uses a.orderBasis

// Hermitian product on n×n matrices given as an n²×n² matrix over vec (row-major).
// An empty Q selects the coordinate-wise product tr(X* Y).
using HermitianForm = Eigen::MatrixXcd;

// det(Q(f_i, f_j)) / |det(Trd(f_i f_j))| over the whole basis.
double archimedean_discriminant(const std::vector<NumMatrix>& basis, const HermitianForm& q = {});

// Same quantity from the trace-zero parts f_1..f_{n-1} of a basis with f_0 = 1.
double archimedean_discriminant_trace_zero(const std::vector<NumMatrix>& basis, const HermitianForm& q = {});

struct GramFactorization {
  Eigen::MatrixXcd U;
  Eigen::VectorXd S;  // diagonal, positive

  Eigen::MatrixXcd reconstruct() const;
};

GramFactorization gram_sqrt(const Eigen::MatrixXcd& gram, double tol = 1e-9);

struct CertificateEntry {
  Permutation sigma;
  std::string witness;  // D^k Ψ_σ(λ)
  bool integral = false;
};

struct CertificateReport {
  Integer D;
  int exponent = 1;
  bool ramified = false;
  bool pass = false;
  std::string note;
  std::vector<CertificateEntry> entries;
};

CertificateReport integrality_certificate(const RatMatrix& lambda, const TorusFixture& fx, const OrderData& o,
                                          bool ramified);

}  // namespace torusinv
