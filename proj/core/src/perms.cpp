#include "torusinv/perms.hpp"

#include "torusinv/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace torusinv {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
      throw Error(ErrorCode::InputParseError, "images do not form a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int i, int j) {
  Permutation p = identity(n);
  std::swap(p.images_[i - 1], p.images_[j - 1]);
  return p;
}

Permutation Permutation::parse(const std::string& text, int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i;
  std::vector<bool> used(n, false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InputParseError,
                "cycle notation \"" + text + "\" at offset " + std::to_string(pos) + ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_ws();
  if (pos == text.size()) fail("empty string");
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (start == pos) fail("expected a point");
      int v = std::stoi(text.substr(start, pos - start));
      if (v < 1 || v > n) fail("point out of range 1.." + std::to_string(n));
      if (used[v - 1]) fail("point repeated");
      used[v - 1] = true;
      cyc.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) im[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  return Permutation(std::move(im));
}

int Permutation::sign() const {
  int inv = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (images_[i] > images_[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

int Permutation::fixed_points() const {
  int c = 0;
  for (int i = 0; i < n(); ++i)
    if (images_[i] == i) ++c;
  return c;
}

bool Permutation::is_identity() const { return fixed_points() == n(); }

Permutation Permutation::inverse() const {
  std::vector<int> inv(n());
  for (int i = 0; i < n(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  std::vector<bool> seen(n(), false);
  for (int i = 0; i < n(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out << '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out << ' ';
      out << j + 1;
      first = false;
      j = images_[j];
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation& s, const Permutation& t) {
  std::vector<int> im(t.n());
  for (int i = 0; i < t.n(); ++i) im[i] = s.images_[t.images_[i]];
  return Permutation(std::move(im));
}

Permutation conjugate(const Permutation& tau, const Permutation& sigma) {
  return tau * sigma * tau.inverse();
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i;
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::size_t perm_index(const Permutation& p) {
  // Lehmer code gives the lexicographic rank.
  const int n = p.n();
  std::size_t rank = 0;
  for (int i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p(j) < p(i)) ++smaller;
    std::size_t f = 1;
    for (int k = 2; k <= n - 1 - i; ++k) f *= k;
    rank += smaller * f;
  }
  return rank;
}

SemiMagicSquare SemiMagicSquare::from_entries(std::vector<std::vector<std::int64_t>> entries) {
  SemiMagicSquare m;
  m.n = static_cast<int>(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != entries.size())
      throw Error(ErrorCode::NotSemiMagic, "row " + std::to_string(i + 1) + " has wrong length");
    for (auto v : entries[i])
      if (v < 0) throw Error(ErrorCode::NotSemiMagic, "negative entry in row " + std::to_string(i + 1));
  }
  std::int64_t target = 0;
  if (m.n > 0)
    for (auto v : entries[0]) target += v;
  for (int i = 0; i < m.n; ++i) {
    std::int64_t r = 0, c = 0;
    for (int j = 0; j < m.n; ++j) {
      r += entries[i][j];
      c += entries[j][i];
    }
    if (r != target) throw Error(ErrorCode::NotSemiMagic, "row " + std::to_string(i + 1) + " sum differs");
    if (c != target) throw Error(ErrorCode::NotSemiMagic, "column " + std::to_string(i + 1) + " sum differs");
  }
  m.entries = std::move(entries);
  m.lineSum = target;
  return m;
}

SemiMagicSquare perm_matrix(const Permutation& sigma) {
  std::vector<std::vector<std::int64_t>> e(sigma.n(), std::vector<std::int64_t>(sigma.n(), 0));
  for (int i = 0; i < sigma.n(); ++i) e[i][sigma(i)] = 1;
  return SemiMagicSquare::from_entries(std::move(e));
}

namespace {

bool augment(int row, const std::vector<std::vector<std::int64_t>>& e, std::vector<int>& colOwner,
             std::vector<bool>& visited) {
  const int n = static_cast<int>(e.size());
  for (int c = 0; c < n; ++c) {
    if (e[row][c] <= 0 || visited[c]) continue;
    visited[c] = true;
    if (colOwner[c] < 0 || augment(colOwner[c], e, colOwner, visited)) {
      colOwner[c] = row;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::pair<Permutation, std::int64_t>> birkhoff_decompose(const SemiMagicSquare& m) {
  SemiMagicSquare checked = SemiMagicSquare::from_entries(m.entries);
  auto e = checked.entries;
  const int n = checked.n;
  std::vector<std::pair<Permutation, std::int64_t>> out;
  std::map<Permutation, std::size_t> where;
  std::int64_t remaining = checked.lineSum;
  while (remaining > 0) {
    std::vector<int> colOwner(n, -1);
    for (int r = 0; r < n; ++r) {
      std::vector<bool> visited(n, false);
      if (!augment(r, e, colOwner, visited))
        throw Error(ErrorCode::NotSemiMagic, "support has no perfect matching");
    }
    std::vector<int> im(n);
    for (int c = 0; c < n; ++c) im[colOwner[c]] = c;
    Permutation p(im);
    std::int64_t mult = e[0][im[0]];
    for (int r = 0; r < n; ++r) mult = std::min(mult, e[r][im[r]]);
    for (int r = 0; r < n; ++r) e[r][im[r]] -= mult;
    remaining -= mult;
    auto it = where.find(p);
    if (it == where.end()) {
      where.emplace(p, out.size());
      out.emplace_back(p, mult);
    } else {
      out[it->second].second += mult;
    }
  }
  return out;
}

RootSet root_set(const Permutation& sigma) {
  RootSet r;
  for (int i = 0; i < sigma.n(); ++i)
    if (sigma(i) != i) r.emplace(sigma(i) + 1, i + 1);
  return r;
}

bool has_complete_root_set(const std::vector<Permutation>& family, int n) {
  RootSet all;
  for (const auto& s : family) {
    RootSet r = root_set(s);
    all.insert(r.begin(), r.end());
  }
  return static_cast<int>(all.size()) == n * (n - 1);
}

PermGroup generate_subgroup(const std::vector<Permutation>& gens, int n) {
  std::set<Permutation> seen{Permutation::identity(n)};
  std::deque<Permutation> queue{Permutation::identity(n)};
  while (!queue.empty()) {
    Permutation cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      for (const Permutation& next : {g * cur, g.inverse() * cur}) {
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  return PermGroup(seen.begin(), seen.end());
}

bool contains(const PermGroup& g, const Permutation& p) { return std::binary_search(g.begin(), g.end(), p); }

bool is_group(const PermGroup& g0) {
  PermGroup g = g0;
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.empty()) return false;
  if (!contains(g, Permutation::identity(g[0].n()))) return false;
  for (const auto& a : g) {
    if (!contains(g, a.inverse())) return false;
    for (const auto& b : g)
      if (!contains(g, a * b)) return false;
  }
  return true;
}

bool is_2transitive(const PermGroup& g, int n) {
  if (!is_group(g)) throw Error(ErrorCode::NotAGroup, "permutation set is not closed");
  std::set<std::pair<int, int>> orbit;
  if (n < 2) return false;
  for (const auto& p : g) orbit.emplace(p(0), p(1));
  return static_cast<int>(orbit.size()) == n * (n - 1);
}

std::vector<Permutation> conjugacy_class(const Permutation& sigma, const PermGroup& g) {
  std::set<Permutation> cls;
  for (const auto& t : g) cls.insert(conjugate(t, sigma));
  return std::vector<Permutation>(cls.begin(), cls.end());
}

}  // namespace torusinv
