#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace torusinv {

// Bijection of {1..n}; stored 0-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  static Permutation transposition(int n, int i, int j);  // 1-based points
  // Cycle notation such as "(1 2 3)(4 5)"; "()" is the identity.
  static Permutation parse(const std::string& cycles, int n);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }  // 0-based
  const std::vector<int>& images() const { return images_; }

  int sign() const;
  int fixed_points() const;
  bool is_identity() const;
  Permutation inverse() const;
  std::string to_string() const;

  // (s * t)(i) = s(t(i))
  friend Permutation operator*(const Permutation& s, const Permutation& t);
  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.images_ < b.images_; }

 private:
  std::vector<int> images_;
};

Permutation conjugate(const Permutation& tau, const Permutation& sigma);  // tau sigma tau^-1

// Lexicographic order on image sequences; the identity comes first.
std::vector<Permutation> all_permutations(int n);
std::size_t perm_index(const Permutation& p);  // position in all_permutations

struct SemiMagicSquare {
  int n = 0;
  std::vector<std::vector<std::int64_t>> entries;
  std::int64_t lineSum = 0;

  static SemiMagicSquare from_entries(std::vector<std::vector<std::int64_t>> entries);
};

SemiMagicSquare perm_matrix(const Permutation& sigma);

std::vector<std::pair<Permutation, std::int64_t>> birkhoff_decompose(const SemiMagicSquare& m);

// Ordered pairs (j, i), 1-based.
using RootSet = std::set<std::pair<int, int>>;

RootSet root_set(const Permutation& sigma);
bool has_complete_root_set(const std::vector<Permutation>& family, int n);

using PermGroup = std::vector<Permutation>;  // sorted, duplicate-free

PermGroup generate_subgroup(const std::vector<Permutation>& gens, int n);
bool is_group(const PermGroup& g);
bool is_2transitive(const PermGroup& g, int n);
std::vector<Permutation> conjugacy_class(const Permutation& sigma, const PermGroup& g);
bool contains(const PermGroup& g, const Permutation& p);

}  // namespace torusinv
