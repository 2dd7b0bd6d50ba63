#include "support/oracles.hpp"

#include "torusinv/discriminants.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace torusinv;
using oracle::poly;

namespace {

std::vector<NumMatrix> numeric(const std::vector<RatMatrix>& b) {
  std::vector<NumMatrix> out;
  for (const auto& m : b) out.push_back(to_num(m));
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InputParseError;
}

}  // namespace

TEST(OrderDisc, QuadraticPowerBasis) {
  for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 13L, -1L, -2L, -5L}) {
    EtaleAlgebra a = etale_from_poly(poly({-d, 0, 1}));
    EXPECT_EQ(order_discriminant(a.basisMatrices), 4 * d) << d;
  }
}

TEST(OrderDisc, GoldenRatioOrder) {
  EtaleAlgebra a = etale_from_poly(poly({-5, 0, 1}));
  RatMatrix one = a.basisMatrices[0];
  RatMatrix w = (one + a.xMatrix) * Rational(1, 2);
  EXPECT_EQ(order_discriminant({one, w}), 5);
}

TEST(OrderDisc, MatchesSylvesterOracle) {
  oracle::Rng rng(51);
  int checked = 0;
  while (checked < 40) {
    const int n = oracle::uniform(rng, 2, 4);
    IntPoly f;
    for (int k = 0; k < n; ++k) f.emplace_back(oracle::uniform(rng, -7, 7));
    f.emplace_back(1);
    if (oracle::sylvester_discriminant(f) == 0) continue;
    ++checked;
    EtaleAlgebra a = etale_from_poly(f);
    EXPECT_EQ(order_discriminant(a.basisMatrices), oracle::sylvester_discriminant(f));
  }
}

TEST(OrderDisc, UnimodularInvariance) {
  EtaleAlgebra a = etale_from_poly(poly({-1, -1, 0, 1}));
  auto b = a.basisMatrices;
  b[1] = b[1] + b[0] * Rational(3);
  b[2] = b[2] - b[1] * Rational(2);
  EXPECT_EQ(order_discriminant(b), -23);
}

TEST(OrderDisc, RejectsNonOrders) {
  EtaleAlgebra a = etale_from_poly(poly({-2, 0, 1}));
  RatMatrix one = a.basisMatrices[0], x = a.basisMatrices[1];
  EXPECT_EQ(code_of([&] { order_discriminant({one * Rational(2), x}); }), ErrorCode::NotAnOrder);
  EXPECT_EQ(code_of([&] { order_discriminant({one, x * Rational(1, 3)}); }), ErrorCode::NotAnOrder);
  RatMatrix off(2, 2, Rational(0));
  off(0, 1) = 1;
  EXPECT_EQ(code_of([&] { order_discriminant({one, off}); }), ErrorCode::NotAnOrder);
}

TEST(OrderDisc, MakeOrderUsesFixtureBasis) {
  EtaleAlgebra a = etale_from_poly(poly({-3, 0, 1}));
  OrderData o = make_order(a);
  EXPECT_EQ(o.relDisc, 12);
  EXPECT_EQ(o.basis.size(), 2u);
}

TEST(Archimedean, UnimodularInvarianceProperty) {
  oracle::Rng rng(52);
  for (const auto& f : {poly({-1, -1, 0, 1}), poly({-2, 0, 1}), poly({1, 0, 1}), poly({2, 0, -4, 0, 1})}) {
    EtaleAlgebra a = etale_from_poly(f);
    const int n = static_cast<int>(a.n);
    const double ref = archimedean_discriminant(numeric(a.basisMatrices));
    EXPECT_GT(ref, 0);
    for (int t = 0; t < 10; ++t) {
      auto b = a.basisMatrices;
      for (int step = 0; step < 10; ++step) {
        int i = oracle::uniform(rng, 0, n - 1), j = oracle::uniform(rng, 0, n - 1);
        if (i == j) continue;
        b[i] = b[i] + b[j] * Rational(oracle::uniform(rng, -2, 2));
        if (oracle::uniform(rng, 0, 4) == 0) b[i] = b[i] * Rational(-1);
      }
      EXPECT_NEAR(archimedean_discriminant(numeric(b)) / ref, 1.0, 1e-9);
    }
  }
}

TEST(Archimedean, ScalesWithBasis) {
  EtaleAlgebra a = etale_from_poly(poly({-2, 0, 1}));
  auto b = a.basisMatrices;
  const double ref = archimedean_discriminant(numeric(b));
  b[1] = b[1] * Rational(2);
  // numerator and denominator both pick up |det|^2 = 4
  EXPECT_NEAR(archimedean_discriminant(numeric(b)), ref, 1e-9 * ref);
}

TEST(Archimedean, TraceZeroVariantIsComputable) {
  EtaleAlgebra a = etale_from_poly(poly({-1, -1, 0, 1}));
  auto b = a.basisMatrices;
  b[1] = b[1] - b[0] * Rational(trace(b[1]) / 3);
  b[2] = b[2] - b[0] * Rational(trace(b[2]) / 3);
  double v = archimedean_discriminant_trace_zero(numeric(b));
  EXPECT_GT(v, 0);
  EXPECT_TRUE(std::isfinite(v));
}

TEST(Archimedean, DegenerateQ) {
  EtaleAlgebra a = etale_from_poly(poly({-2, 0, 1}));
  HermitianForm q = HermitianForm::Identity(4, 4);
  q(0, 0) = -1;
  EXPECT_EQ(code_of([&] { archimedean_discriminant(numeric(a.basisMatrices), q); }), ErrorCode::DegenerateQ);
  HermitianForm nh = HermitianForm::Identity(4, 4);
  nh(0, 1) = 1;
  EXPECT_EQ(code_of([&] { archimedean_discriminant(numeric(a.basisMatrices), nh); }), ErrorCode::DegenerateQ);
  HermitianForm ok = HermitianForm::Identity(4, 4) * 2.0;
  double base = archimedean_discriminant(numeric(a.basisMatrices));
  EXPECT_NEAR(archimedean_discriminant(numeric(a.basisMatrices), ok), 4 * base, 1e-9 * base);
}

TEST(GramSqrt, ReconstructsPositiveDefinite) {
  oracle::Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const int n = oracle::uniform(rng, 1, 5);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(n, n);
    Eigen::MatrixXcd g = a * a.adjoint() + Eigen::MatrixXcd::Identity(n, n);
    GramFactorization f = gram_sqrt(g);
    EXPECT_LT((f.reconstruct() - g).norm(), 1e-9 * g.norm());
    EXPECT_GT(f.S.minCoeff(), 0);
  }
}

TEST(GramSqrt, Errors) {
  Eigen::MatrixXcd nh = Eigen::MatrixXcd::Identity(2, 2);
  nh(0, 1) = 1;
  EXPECT_EQ(code_of([&] { gram_sqrt(nh); }), ErrorCode::NotHermitian);
  Eigen::MatrixXcd np = Eigen::MatrixXcd::Identity(2, 2);
  np(1, 1) = -1;
  EXPECT_EQ(code_of([&] { gram_sqrt(np); }), ErrorCode::NotPositive);
}

TEST(Certificate, QuadraticPacketElement) {
  TorusFixture fx = build_fixture(poly({-10, 0, 1}));
  OrderData o = make_order(fx.algebra);
  RatMatrix lambda(2, 2, Rational(0));
  lambda(0, 0) = Rational(1, 2);
  lambda(0, 1) = -2;
  lambda(1, 1) = 1;
  CertificateReport r = integrality_certificate(lambda, fx, o, false);
  EXPECT_EQ(r.D, 40);
  EXPECT_EQ(r.exponent, 1);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[1].witness, "3/1");
}

TEST(Certificate, RamifiedExponentAndFailure) {
  TorusFixture fx = build_fixture(poly({-1, -1, 0, 1}));
  OrderData o = make_order(fx.algebra);
  RatMatrix lambda = RatMatrix::identity(3, Rational(0));
  CertificateReport r = integrality_certificate(lambda, fx, o, true);
  EXPECT_EQ(r.exponent, 3);
  EXPECT_TRUE(r.pass);
  lambda(0, 1) = Rational(1, 7);
  lambda(2, 0) = Rational(2, 7);
  EXPECT_FALSE(integrality_certificate(lambda, fx, o, false).pass);
}
