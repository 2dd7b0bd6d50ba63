#include "torusinv/relations.hpp"

#include "torusinv/errors.hpp"
#include "torusinv/generators.hpp"

#include <algorithm>

namespace torusinv {

namespace {

using IntRow = std::vector<Integer>;

// Row-style Hermite normal form in place; returns the rank.
std::size_t hermite_rows(std::vector<IntRow>& rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        if (q != 0)
          for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  return r;
}

}  // namespace

std::vector<std::vector<std::int64_t>> RelationVector::weighted_sum() const {
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  auto perms = all_permutations(n);
  for (std::size_t k = 0; k < perms.size(); ++k)
    for (int i = 0; i < n; ++i) m[i][perms[k](i)] += f[k];
  return m;
}

bool RelationVector::in_kernel() const {
  for (const auto& row : weighted_sum())
    for (auto v : row)
      if (v != 0) return false;
  return true;
}

std::vector<RelationVector> relation_kernel_basis(int n) {
  if (n > 5) throw Error(ErrorCode::DegreeTooLarge, "relation lattice supported for n <= 5");
  if (n < 2) throw Error(ErrorCode::PreconditionsFailed, "relation lattice needs n >= 2");
  auto perms = all_permutations(n);
  const std::size_t m = perms.size(), sq = static_cast<std::size_t>(n * n);
  // [vec(P^σ) | e_σ]; reducing the left block leaves kernel vectors on the right.
  std::vector<IntRow> rows(m, IntRow(sq + m, 0));
  for (std::size_t k = 0; k < m; ++k) {
    for (int i = 0; i < n; ++i) rows[k][static_cast<std::size_t>(i * n + perms[k](i))] = 1;
    rows[k][sq + k] = 1;
  }
  std::size_t rank = hermite_rows(rows, sq);
  std::vector<IntRow> kernel;
  for (std::size_t k = rank; k < m; ++k) kernel.emplace_back(rows[k].begin() + sq, rows[k].end());
  hermite_rows(kernel, m);
  std::vector<RelationVector> out;
  for (const auto& row : kernel) {
    RelationVector r;
    r.n = n;
    for (const auto& x : row) {
      if (!x.fits_slong_p()) throw std::overflow_error("relation coefficient exceeds 64 bits");
      r.f.push_back(x.get_si());
    }
    out.push_back(std::move(r));
  }
  return out;
}

RelationMonomials relation_monomials(const RelationVector& r) {
  RelationMonomials m;
  auto perms = all_permutations(r.n);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    if (r.f[k] > 0) m.pos[perms[k]] = r.f[k];
    if (r.f[k] < 0) m.neg[perms[k]] = -r.f[k];
  }
  return m;
}

bool verify_relation(const RelationVector& r, const RatMatrix& g) {
  RelationMonomials m = relation_monomials(r);
  auto side = [&](const std::map<Permutation, std::int64_t>& e) {
    Rational acc = 1;
    for (const auto& [p, k] : e) {
      Rational v = psi1(p, g);
      Rational pw = 1;
      for (std::int64_t t = 0; t < k; ++t) pw *= v;
      acc *= pw;
    }
    return acc;
  };
  return side(m.pos) == side(m.neg);
}

}  // namespace torusinv
