#include "support/oracles.hpp"

#include "torusinv/etale.hpp"
#include "torusinv/generators.hpp"
#include "torusinv/relations.hpp"

#include <gtest/gtest.h>

using namespace torusinv;

TEST(Psi, TwoByTwoClosedForms) {
  oracle::Rng rng(31);
  const Permutation id = Permutation::identity(2), sw = Permutation::parse("(1 2)", 2);
  for (int t = 0; t < 200; ++t) {
    RatMatrix g = oracle::random_invertible(rng, 2);
    Rational a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    EXPECT_EQ(psi1(id, g), a * d);
    EXPECT_EQ(psi1(sw, g), b * c);
    EXPECT_EQ(psi0(id, g), a * d / (a * d - b * c));
    EXPECT_EQ(psi0(sw, g), -b * c / (a * d - b * c));
  }
}

TEST(Psi, LeibnizAndPartitionOfUnity) {
  oracle::Rng rng(32);
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t < 40; ++t) {
      RatMatrix g = oracle::random_matrix(rng, n);
      Rational s = 0;
      for (const auto& p : all_permutations(n)) s += p.sign() * psi1(p, g);
      ASSERT_EQ(s, oracle::leibniz_det(g));
      if (s == 0) continue;
      auto v = psi0_vector(g);
      Rational total = 0;
      for (const auto& x : v.values) total += x;
      EXPECT_EQ(total, 1);
      EXPECT_EQ(v.detValue, s);
    }
}

TEST(Psi, ScalingInvariance) {
  oracle::Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    RatMatrix g = oracle::random_invertible(rng, 3);
    Rational c = oracle::small_rational(rng);
    if (c == 0) continue;
    for (const auto& p : all_permutations(3)) EXPECT_EQ(psi0(p, g * c), psi0(p, g));
  }
}

TEST(Psi, SingularAndSlModes) {
  RatMatrix g(2, 2, Rational(1));
  try {
    psi0(Permutation::identity(2), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
  RatMatrix h = RatMatrix::identity(2, Rational(0)) * Rational(2);
  EXPECT_THROW(psi0_vector(h, PsiMode::SL), Error);
  RatMatrix u = RatMatrix::identity(2, Rational(0));
  u(0, 1) = 5;
  auto v = psi0_vector(u, PsiMode::SL);
  EXPECT_EQ(v.values[0], 1);
}

TEST(PsiTorus, DiagonalIdempotentsReproduceClassical) {
  oracle::Rng rng(34);
  for (int n = 2; n <= 4; ++n) {
    auto idems = diagonal_idempotents(n);
    for (int t = 0; t < 20; ++t) {
      RatMatrix g = oracle::random_invertible(rng, n);
      auto v = psi_torus_vector(g, idems);
      for (const auto& p : all_permutations(n)) EXPECT_EQ(v.at(p), psi0(p, g));
    }
  }
}

TEST(PsiTorus, DualBasisFormAgrees) {
  oracle::Rng rng(35);
  for (int n = 2; n <= 4; ++n) {
    auto idems = diagonal_idempotents(n);
    // A non-trivial Z-basis of the diagonal algebra: partial sums of the idempotents.
    std::vector<RatMatrix> basis;
    RatMatrix acc(n, n, Rational(0));
    for (int k = 0; k < n; ++k) {
      acc += idems[k];
      basis.push_back(acc);
    }
    auto dual = dual_basis(basis);
    for (int t = 0; t < 10; ++t) {
      RatMatrix g = oracle::random_invertible(rng, n);
      for (const auto& p : all_permutations(n)) EXPECT_EQ(psi_torus_dual(p, g, basis, dual, idems), psi0(p, g));
    }
  }
}

TEST(PsiTorus, BadIdempotentsRejected) {
  auto idems = diagonal_idempotents(3);
  idems[0] = idems[0] * Rational(2);
  try {
    psi_torus_vector(RatMatrix::identity(3, Rational(0)), idems);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadIdempotents);
  }
}

TEST(FiberTest, DiagonalVersusGeneric) {
  auto idems = diagonal_idempotents(3);
  RatMatrix d = RatMatrix::identity(3, Rational(0));
  d(0, 0) = 2;
  d(2, 2) = -7;
  EXPECT_TRUE(identity_fiber_test(d, idems).inFiberAndTorus());
  RatMatrix u = RatMatrix::identity(3, Rational(0));
  u(0, 1) = 1;
  FiberReport r = identity_fiber_test(u, idems);
  EXPECT_TRUE(r.fiberTrivial);  // unipotent: Ψ_id = 1, others vanish
  EXPECT_FALSE(r.commutes);
  EXPECT_FALSE(r.inFiberAndTorus());
}

TEST(Relations, RanksMatchIndependentRankComputation) {
  for (int n = 2; n <= 5; ++n) {
    auto perms = all_permutations(n);
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : perms) {
      std::vector<Rational> v(n * n, Rational(0));
      for (int i = 0; i < n; ++i) v[i * n + p(i)] = 1;
      rows.push_back(v);
    }
    const std::size_t kernel = perms.size() - oracle::rank(rows);
    auto basis = relation_kernel_basis(n);
    EXPECT_EQ(basis.size(), kernel) << "n=" << n;
    EXPECT_EQ(basis.size(), expected_relation_rank(n)) << "n=" << n;
  }
}

TEST(Relations, KnownRanks) {
  EXPECT_EQ(relation_kernel_basis(2).size(), 0u);
  EXPECT_EQ(relation_kernel_basis(3).size(), 1u);
  EXPECT_EQ(relation_kernel_basis(4).size(), 14u);
}

TEST(Relations, DegreeThreeIsTheSignVector) {
  auto basis = relation_kernel_basis(3);
  ASSERT_EQ(basis.size(), 1u);
  auto perms = all_permutations(3);
  const int s = basis[0].f[0] > 0 ? 1 : -1;
  for (std::size_t k = 0; k < perms.size(); ++k) EXPECT_EQ(basis[0].f[k], s * perms[k].sign());
}

TEST(Relations, KernelAndMonomialsProperty) {
  oracle::Rng rng(36);
  for (int n = 3; n <= 4; ++n) {
    auto perms = all_permutations(n);
    for (const auto& r : relation_kernel_basis(n)) {
      EXPECT_TRUE(r.in_kernel());
      for (const auto& row : r.weighted_sum())
        for (auto x : row) EXPECT_EQ(x, 0);
      RelationMonomials m = relation_monomials(r);
      for (std::size_t k = 0; k < perms.size(); ++k) {
        std::int64_t pos = m.pos.count(perms[k]) ? m.pos.at(perms[k]) : 0;
        std::int64_t neg = m.neg.count(perms[k]) ? m.neg.at(perms[k]) : 0;
        EXPECT_GE(pos, 0);
        EXPECT_GE(neg, 0);
        EXPECT_EQ(pos - neg, r.f[k]);
      }
      for (int t = 0; t < 20; ++t) {
        RatMatrix g = oracle::random_matrix(rng, n);
        EXPECT_TRUE(verify_relation(r, g));
      }
    }
  }
}

TEST(Relations, VerifyDetectsNonRelations) {
  RelationVector r;
  r.n = 3;
  r.f.assign(6, 0);
  r.f[0] = 1;
  r.f[1] = -1;
  EXPECT_FALSE(r.in_kernel());
  RatMatrix g = RatMatrix::identity(3, Rational(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) += i + 2 * j + 1;
  EXPECT_FALSE(verify_relation(r, g));
}

TEST(Relations, DegreeLimit) {
  try {
    relation_kernel_basis(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeTooLarge);
  }
}
