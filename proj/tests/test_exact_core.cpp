#include "support/oracles.hpp"

#include "torusinv/etale.hpp"
#include "torusinv/numcomplex.hpp"
#include "torusinv/quadext.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using namespace torusinv;

TEST(Rational, ParseCanonicalizes) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational("-5/10"), Rational(-1, 2));
  EXPECT_EQ(to_string(parse_rational("2")), "2/1");
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "1/0", "5/-10", "abc", "1/2/3", "1.5", " 1"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InputParseError) << bad;
    }
  }
}

TEST(Matrix, BareissMatchesLeibnizOracle) {
  oracle::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const int n = oracle::uniform(rng, 1, 5);
    RatMatrix g = oracle::random_matrix(rng, n);
    ASSERT_EQ(det(g), oracle::leibniz_det(g)) << "trial " << t;
  }
}

TEST(Matrix, DetOfSingularIsZero) {
  RatMatrix g(3, 3, Rational(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = i + j;
  EXPECT_EQ(det(g), 0);
}

TEST(Matrix, EmptyDetThrows) {
  EXPECT_THROW(det(RatMatrix()), std::invalid_argument);
}

TEST(Matrix, InverseProperty) {
  oracle::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const int n = oracle::uniform(rng, 1, 5);
    RatMatrix g = oracle::random_invertible(rng, n);
    EXPECT_EQ(g * inverse(g), RatMatrix::identity(n, Rational(0)));
  }
}

TEST(Matrix, SingularInverseThrows) {
  RatMatrix g(2, 2, Rational(1));
  try {
    inverse(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Matrix, NumericDetAgreesWithExact) {
  oracle::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const int n = oracle::uniform(rng, 1, 7);
    RatMatrix g = oracle::random_matrix(rng, n);
    NumComplex d = det(to_num(g));
    double exact = det(g).get_d();
    EXPECT_LE(std::abs(d.re() - exact), d.eps() + 1e-9 * std::max(1.0, std::abs(exact)));
  }
}

TEST(QuadExt, Arithmetic) {
  QuadExt a(2, 1, 1), b(2, 1, -1);
  EXPECT_EQ(a * b, QuadExt(2, -1, 0));
  EXPECT_EQ(a.norm(), -1);
  EXPECT_EQ(a.conj(), b);
  EXPECT_EQ((a / b) * b, a);
  EXPECT_TRUE((a + b).is_rational());
  EXPECT_EQ(to_string(a), "1/1+1/1*sqrt(2)");
}

TEST(QuadExt, DivisionByZeroThrows) {
  EXPECT_THROW(QuadExt(3, 1, 1) / QuadExt(3, 0, 0), Error);
}

TEST(QuadExt, AlgebraicIntegers) {
  EXPECT_TRUE(is_algebraic_integer(QuadExt(5, Rational(1, 2), Rational(1, 2))));
  EXPECT_FALSE(is_algebraic_integer(QuadExt(2, Rational(1, 2), Rational(1, 2))));
  EXPECT_FALSE(is_algebraic_integer(QuadExt(3, 0, Rational(1, 2))));
  EXPECT_TRUE(is_algebraic_integer(QuadExt(-3, Rational(-1, 2), Rational(1, 2))));
  EXPECT_TRUE(is_algebraic_integer(QuadExt(7, 3, -2)));
}

TEST(QuadExt, Squarefree) {
  EXPECT_TRUE(is_squarefree(2));
  EXPECT_TRUE(is_squarefree(-15));
  EXPECT_FALSE(is_squarefree(12));
  EXPECT_FALSE(is_squarefree(49));
}

TEST(NumComplex, ErrorBoundContainsExactValue) {
  oracle::Rng rng(14);
  for (int t = 0; t < 500; ++t) {
    Rational p = oracle::small_rational(rng, 99, 37), q = oracle::small_rational(rng, 99, 37);
    Rational r = oracle::small_rational(rng, 99, 37);
    if (q == 0) continue;
    NumComplex x = NumComplex::from_rational(p), y = NumComplex::from_rational(q), z = NumComplex::from_rational(r);
    NumComplex v = (x * y + z) / y - x;
    Rational exact = (p * q + r) / q - p;
    EXPECT_LE(std::abs(v.re() - exact.get_d()), v.eps() + 1e-300) << t;
  }
}

TEST(NumComplex, ZeroTestUsesRadius) {
  EXPECT_TRUE(is_zero(NumComplex(1e-14, 0, 0)));
  EXPECT_TRUE(is_zero(NumComplex(1e-6, 0, 1e-5)));
  EXPECT_FALSE(is_zero(NumComplex(1e-3, 0, 1e-5)));
}

TEST(Etale, CompanionSatisfiesPolynomial) {
  EtaleAlgebra a = etale_from_poly(oracle::poly({-1, -1, 0, 1}));
  const RatMatrix& x = a.xMatrix;
  RatMatrix id = RatMatrix::identity(3, Rational(0));
  EXPECT_TRUE(is_zero_matrix(RatMatrix(x * x * x - x - id)));
  ASSERT_EQ(a.basisMatrices.size(), 3u);
  EXPECT_EQ(a.basisMatrices[0], id);
  EXPECT_EQ(a.basisMatrices[2], x * x);
  EXPECT_TRUE(a.contains(x * x + id));
  RatMatrix off(3, 3, Rational(0));
  off(0, 1) = 1;
  EXPECT_FALSE(a.contains(off));
}

TEST(Etale, RejectsSquaresAndNonMonic) {
  try {
    etale_from_poly(oracle::poly({1, -2, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSquarefree);
  }
  EXPECT_THROW(etale_from_poly(oracle::poly({1, 0, 2})), Error);
}

TEST(Etale, DualBasisProperty) {
  oracle::Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    IntPoly f = oracle::poly({oracle::uniform(rng, -9, 9), oracle::uniform(rng, -9, 9), oracle::uniform(rng, -9, 9), 1});
    if (oracle::sylvester_discriminant(f) == 0) continue;
    EtaleAlgebra a = etale_from_poly(f);
    auto dual = dual_basis(a, a.basisMatrices);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_EQ(trace(RatMatrix(dual[i] * a.basisMatrices[j])), i == j ? 1 : 0);
  }
}

TEST(Etale, DualBasisRejectsForeignElements) {
  EtaleAlgebra a = etale_from_poly(oracle::poly({-2, 0, 1}));
  RatMatrix off(2, 2, Rational(0));
  off(0, 1) = 1;
  try {
    dual_basis(a, {RatMatrix::identity(2, Rational(0)), off});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateTraceForm);
  }
}

TEST(Errors, NamesAreStable) {
  EXPECT_STREQ(error_name(ErrorCode::NotSquarefree), "NotSquarefree");
  EXPECT_STREQ(error_name(ErrorCode::SchemaMismatch), "SchemaMismatch");
  Error e(ErrorCode::DegenerateQ, "x");
  EXPECT_STREQ(e.what(), "DegenerateQ: x");
}
