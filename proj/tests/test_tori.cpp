#include "support/oracles.hpp"

#include "torusinv/tori.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

using namespace torusinv;
using oracle::poly;

namespace {

using CMat = std::vector<std::vector<std::complex<double>>>;

// Ψ_σ(g) computed by conjugating g into an eigenbasis of the companion matrix.
std::vector<std::complex<double>> eigenbasis_psi(const TorusFixture& fx, const RatMatrix& g) {
  const int n = static_cast<int>(fx.n());
  Eigen::MatrixXd x(n, n), gd(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x(i, j) = fx.algebra.xMatrix(i, j).get_d();
      gd(i, j) = g(i, j).get_d();
    }
  Eigen::EigenSolver<Eigen::MatrixXd> es(x);
  Eigen::MatrixXcd p = es.eigenvectors();
  Eigen::VectorXcd ev = es.eigenvalues();
  // Reorder columns to match the fixture's root order.
  Eigen::MatrixXcd q(n, n);
  for (int k = 0; k < n; ++k) {
    int best = 0;
    for (int c = 1; c < n; ++c)
      if (std::abs(ev(c) - fx.numRoots[k].value()) < std::abs(ev(best) - fx.numRoots[k].value())) best = c;
    q.col(k) = p.col(best);
  }
  Eigen::MatrixXcd h = q.inverse() * gd.cast<std::complex<double>>() * q;
  CMat hm(n, std::vector<std::complex<double>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hm[i][j] = h(i, j);
  std::vector<std::complex<double>> out;
  for (const auto& s : all_permutations(n)) out.push_back(oracle::classical_psi(s, hm, h.determinant()));
  return out;
}

}  // namespace

TEST(Fixture, QuadraticBackend) {
  TorusFixture fx = build_fixture(poly({-2, 0, 1}));
  EXPECT_EQ(fx.backend, Backend::Quad);
  EXPECT_EQ(fx.d, 2);
  EXPECT_EQ(fx.galois.size(), 2u);
  ASSERT_EQ(fx.quadRoots.size(), 2u);
  EXPECT_EQ(fx.quadRoots[0] * fx.quadRoots[0], QuadExt(2, 2, 0));
  EXPECT_EQ(fx.quadRoots[0] + fx.quadRoots[1], QuadExt(2, 0, 0));

  TorusFixture g = build_fixture(poly({-1, -1, 1}));  // disc 5
  EXPECT_EQ(g.d, 5);
  TorusFixture split = build_fixture(poly({2, -3, 1}));  // (x-1)(x-2)
  EXPECT_EQ(split.galois.size(), 1u);
}

TEST(Fixture, CubicGaloisDetection) {
  EXPECT_EQ(build_fixture(poly({-1, -1, 0, 1})).galois.size(), 6u);
  EXPECT_EQ(build_fixture(poly({-1, -3, 0, 1})).galois.size(), 3u);
  EXPECT_EQ(build_fixture(poly({1, -3, 0, 1})).galois.size(), 3u);  // disc 81
  EXPECT_EQ(build_fixture(poly({0, -1, 0, 1})).galois.size(), 1u);  // x^3 - x splits
  EXPECT_EQ(build_fixture(poly({-2, 0, 0, 1})).backend, Backend::Numeric);
  EXPECT_EQ(build_fixture(poly({-2, 0, 0, 1})).galois.size(), 6u);
}

TEST(Fixture, Errors) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InputParseError;
  };
  EXPECT_EQ(code([] { build_fixture(poly({2, 0, -4, 0, 1})); }), ErrorCode::GaloisSpecRequired);
  EXPECT_EQ(code([] { build_fixture(poly({2, 0, -4, 0, 1}), std::vector<std::string>{"(1 2 3 4)"}); }),
            ErrorCode::GaloisSpecInvalid);
  EXPECT_EQ(code([] { build_fixture(poly({1, 2, 1})); }), ErrorCode::NotSquarefree);
  EXPECT_EQ(code([] { build_fixture(poly({-1, -3, 0, 1}), std::vector<std::string>{"(1 2)"}); }),
            ErrorCode::GaloisSpecInvalid);
}

TEST(Fixture, QuarticWithSuppliedGroup) {
  TorusFixture fx = build_fixture(poly({2, 0, -4, 0, 1}), std::vector<std::string>{"(1 2 4 3)"});
  EXPECT_EQ(fx.galois.size(), 4u);
  EXPECT_FALSE(is_2transitive(fx.galois, 4));
}

TEST(Idempotents, Axioms) {
  for (const auto& f : {poly({-1, -1, 0, 1}), poly({-1, -3, 0, 1})}) {
    TorusFixture fx = build_fixture(f);
    const std::size_t n = fx.n();
    NumMatrix sum(n, n, NumComplex(0.0));
    for (std::size_t i = 0; i < n; ++i) {
      sum += fx.numIdems[i];
      EXPECT_TRUE(matrix_near(NumMatrix(fx.numIdems[i] * fx.numIdems[i]), fx.numIdems[i], 1e-9));
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) EXPECT_TRUE(is_zero_matrix(NumMatrix(fx.numIdems[i] * fx.numIdems[j])));
    }
    EXPECT_TRUE(matrix_near(sum, NumMatrix::identity(n, NumComplex(0.0)), 1e-9));
  }
  TorusFixture q = build_fixture(poly({-3, 0, 1}));
  EXPECT_EQ(q.quadIdems[0] * q.quadIdems[0], q.quadIdems[0]);
  EXPECT_EQ(q.quadIdems[0] + q.quadIdems[1], QuadMatrix::identity(2, QuadExt(3, 0, 0)));
  EXPECT_TRUE(is_zero_matrix(QuadMatrix(q.quadIdems[0] * q.quadIdems[1])));
}

TEST(Idempotents, RejectWrongRoots) {
  EtaleAlgebra a = etale_from_poly(poly({-2, 0, 1}));
  try {
    lagrange_idempotents(a, std::vector<QuadExt>{QuadExt(2, 0, 1), QuadExt(2, 1, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RootResidualTooLarge);
  }
}

TEST(Roots, ResidualsSmall) {
  for (const auto& f : {poly({-1, -1, 0, 1}), poly({5, -3, 2, -7, 1}), poly({1, 0, 0, 0, 0, 1})}) {
    auto roots = numeric_roots(f);
    ASSERT_EQ(roots.size(), f.size() - 1);
    for (const auto& r : roots) {
      std::complex<double> acc = 0;
      for (std::size_t k = f.size(); k-- > 0;) acc = acc * r.value() + f[k].get_d();
      EXPECT_LT(std::abs(acc), 1e-10);
      EXPECT_LE(r.eps(), 1e-8);
    }
  }
}

TEST(FixturePsi, QuadraticMatchesEigenbasisOracle) {
  oracle::Rng rng(41);
  for (const auto& f : {poly({-2, 0, 1}), poly({-1, -1, 1}), poly({-7, 3, 1})}) {
    TorusFixture fx = build_fixture(f);
    for (int t = 0; t < 30; ++t) {
      RatMatrix g = oracle::random_invertible(rng, 2);
      // Exact eigenbasis P = [[θ1 + c1, θ2 + c1], [1, 1]].
      QuadExt c1(fx.d, Rational(f[1]));
      QuadMatrix p(2, 2, QuadExt(fx.d, 0));
      p(0, 0) = fx.quadRoots[0] + c1;
      p(0, 1) = fx.quadRoots[1] + c1;
      p(1, 0) = p(1, 1) = QuadExt(fx.d, 1);
      QuadMatrix h = inverse(p) * to_quad(g, fx.d) * p;
      QuadExt dh = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
      auto vals = fixture_psi_vector(fx, g);
      EXPECT_EQ(vals[0].q, h(0, 0) * h(1, 1) / dh);
      EXPECT_EQ(vals[1].q, -h(0, 1) * h(1, 0) / dh);
      EXPECT_EQ(vals[0].q + vals[1].q, QuadExt(fx.d, 1));
    }
  }
}

TEST(FixturePsi, CubicMatchesEigenbasisOracle) {
  oracle::Rng rng(42);
  for (const auto& f : {poly({-1, -1, 0, 1}), poly({-1, -3, 0, 1}), poly({3, 1, -2, 1})}) {
    TorusFixture fx = build_fixture(f);
    for (int t = 0; t < 20; ++t) {
      RatMatrix g = oracle::random_invertible(rng, 3, 5, 1);
      auto ref = eigenbasis_psi(fx, g);
      auto vals = fixture_psi_vector(fx, g);
      for (std::size_t k = 0; k < ref.size(); ++k)
        EXPECT_LT(std::abs(vals[k].z.value() - ref[k]), 1e-9 * std::max(1.0, std::abs(ref[k])));
    }
  }
}

TEST(FixturePsi, TorusElementsAreInIdentityFiber) {
  oracle::Rng rng(43);
  TorusFixture fx = build_fixture(poly({-1, -1, 0, 1}));
  for (int t = 0; t < 20; ++t) {
    RatMatrix g(3, 3, Rational(0));
    for (const auto& b : fx.algebra.basisMatrices) g += b * oracle::small_rational(rng);
    if (det(g) == 0) continue;
    FiberReport r = fixture_fiber_test(fx, g);
    EXPECT_TRUE(r.inFiberAndTorus());
  }
  RatMatrix u = RatMatrix::identity(3, Rational(0));
  u(0, 2) = 1;
  EXPECT_FALSE(fixture_fiber_test(fx, u).inFiberAndTorus());
}

TEST(Equivariance, HoldsForAllPairs) {
  oracle::Rng rng(44);
  for (const auto& f : {poly({-5, 0, 1}), poly({-1, -1, 0, 1}), poly({-1, -3, 0, 1})}) {
    TorusFixture fx = build_fixture(f);
    const int n = static_cast<int>(fx.n());
    for (int t = 0; t < 10; ++t) {
      RatMatrix g = oracle::random_invertible(rng, n, 5, 3);
      for (const auto& s : all_permutations(n))
        for (const auto& tau : fx.galois) EXPECT_TRUE(galois_equivariance_check(fx, g, s, tau).ok);
    }
  }
}

TEST(Equivariance, TauOutsideGroup) {
  TorusFixture fx = build_fixture(poly({-1, -3, 0, 1}));
  try {
    galois_equivariance_check(fx, RatMatrix::identity(3, Rational(0)), Permutation::identity(3),
                              Permutation::parse("(1 2)", 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TauNotInGalois);
  }
}

TEST(Reconstruction, ContinuedFractions) {
  EXPECT_EQ(reconstruct_rational(1.0 / 3.0, 1e-12, Integer(100)), Rational(1, 3));
  EXPECT_EQ(reconstruct_rational(-22.0 / 7.0, 1e-12, Integer(100)), Rational(-22, 7));
  EXPECT_EQ(reconstruct_rational(0.0, 1e-12, Integer(1)), Rational(0));
  EXPECT_FALSE(reconstruct_rational(3.14159265358979, 1e-14, Integer(10)).has_value());
}

TEST(OrbitProduct, MatchesNumericProduct) {
  oracle::Rng rng(45);
  TorusFixture fx = build_fixture(poly({-1, -1, 0, 1}));
  const Permutation rot = Permutation::parse("(1 2 3)", 3), sw = Permutation::parse("(1 2)", 3);
  for (int t = 0; t < 20; ++t) {
    RatMatrix g = oracle::random_invertible(rng, 3, 3, 1);
    for (const auto& s : {rot, sw}) {
      OrbitProduct op = galois_orbit_product(fx, s, g);
      std::complex<double> prod = 1;
      for (const auto& c : conjugacy_class(s, fx.galois)) prod *= fixture_psi(fx, c, g).z.value();
      EXPECT_LT(std::abs(prod - op.value.get_d()), 1e-9 * std::max(1.0, std::abs(prod)));
      EXPECT_EQ(op.orbit.size(), s == rot ? 2u : 3u);
    }
  }
}

TEST(OrbitProduct, QuadraticSingletonOrbitsAreRational) {
  oracle::Rng rng(46);
  TorusFixture fx = build_fixture(poly({-3, 0, 1}));
  const Permutation id = Permutation::identity(2), flip = Permutation::parse("(1 2)", 2);
  for (int t = 0; t < 20; ++t) {
    RatMatrix g = oracle::random_invertible(rng, 2);
    for (const auto& s : {id, flip}) {
      OrbitProduct op = galois_orbit_product(fx, s, g);
      EXPECT_EQ(op.orbit.size(), 1u);
      QuadExt v = fixture_psi(fx, s, g).q;
      EXPECT_TRUE(v.is_rational());
      EXPECT_EQ(op.value, v.a());
    }
  }
}

TEST(ZeroPropagation, Preconditions) {
  TorusFixture c3 = build_fixture(poly({-1, -3, 0, 1}));
  TorusFixture s3 = build_fixture(poly({-1, -1, 0, 1}));
  RatMatrix id = RatMatrix::identity(3, Rational(0));
  const Permutation rot = Permutation::parse("(1 2 3)", 3);
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InputParseError;
  };
  EXPECT_EQ(code([&] { zero_propagation(c3, id, rot); }), ErrorCode::PreconditionsFailed);
  EXPECT_EQ(code([&] { zero_propagation(s3, id, Permutation::parse("(1 2)", 3)); }), ErrorCode::PreconditionsFailed);
  RatMatrix g = id;
  g(0, 1) = 1;
  g(1, 2) = 2;
  g(2, 0) = 3;
  EXPECT_EQ(code([&] { zero_propagation(s3, g, rot); }), ErrorCode::PreconditionsFailed);
  EXPECT_TRUE(zero_propagation(s3, id, rot).pass);
}

TEST(ZeroPropagation, CyclicCounterexample) {
  TorusFixture c3 = build_fixture(poly({-1, -3, 0, 1}));
  RatMatrix g(3, 3, Rational(0));
  const int e[3][3] = {{1, 0, 1}, {-1, -1, -1}, {0, -1, -1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = e[i][j];
  const Permutation rot = Permutation::parse("(1 2 3)", 3);
  EXPECT_EQ(galois_orbit_product(c3, rot, g).value, 0);
  EXPECT_FALSE(propagation_report(c3, g).pass);
  EXPECT_EQ(galois_orbit_product(c3, rot.inverse(), g).value, Rational(8, 9));
  EXPECT_EQ(galois_orbit_product(c3, Permutation::identity(3), g).value, Rational(1, 9));
}

TEST(PrimitiveMultiple, ClearsDenominators) {
  RatMatrix g(2, 2, Rational(0));
  g(0, 0) = Rational(1, 2);
  g(0, 1) = Rational(3, 4);
  g(1, 0) = Rational(-5, 6);
  g(1, 1) = 0;
  RatMatrix p = primitive_integer_multiple(g);
  EXPECT_EQ(p(0, 0), 6);
  EXPECT_EQ(p(0, 1), 9);
  EXPECT_EQ(p(1, 0), -10);
}
