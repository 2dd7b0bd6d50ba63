#pragma once

#include "torusinv/matrix.hpp"
#include "torusinv/perms.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace torusinv {

struct RelationVector {
  int n = 0;
  std::vector<std::int64_t> f;  // indexed by perm_index

  // Σ f(σ) P^σ
  std::vector<std::vector<std::int64_t>> weighted_sum() const;
  bool in_kernel() const;
};

// Integer kernel of σ ↦ vec(P^σ), as a reduced Hermite basis.
std::vector<RelationVector> relation_kernel_basis(int n);

inline std::size_t expected_relation_rank(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f - static_cast<std::size_t>((n - 1) * (n - 1)) - 1;
}

struct RelationMonomials {
  std::map<Permutation, std::int64_t> pos;
  std::map<Permutation, std::int64_t> neg;
};

RelationMonomials relation_monomials(const RelationVector& r);

// Π psi1^pos == Π psi1^neg, exactly.
bool verify_relation(const RelationVector& r, const RatMatrix& g);

}  // namespace torusinv
