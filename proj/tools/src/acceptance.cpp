#include "torusinv_app/acceptance.hpp"

#include "torusinv/discriminants.hpp"
#include "torusinv/parallel.hpp"
#include "torusinv/pgl2.hpp"
#include "torusinv/relations.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace torusinv::app {

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail << "FIRST FAILURE: " << what << "; ";
    pass = pass && cond;
  }
};

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

RatMatrix random_rational_matrix(Rng& rng, int n, int num, int den) {
  RatMatrix g(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = make_rational(uniform(rng, -num, num), uniform(rng, 1, den));
  return g;
}

RatMatrix random_nonsingular(Rng& rng, int n, int num, int den) {
  for (;;) {
    RatMatrix g = random_rational_matrix(rng, n, num, den);
    if (det(g) != 0) return g;
  }
}

IntPoly ints(std::initializer_list<long> c) {
  IntPoly f;
  for (long x : c) f.emplace_back(x);
  return f;
}

void leibniz(Outcome& o, Rng& rng, bool flip) {
  for (int n = 2; n <= 4; ++n) {
    auto perms = all_permutations(n);
    int bad = 0, badNormalized = 0;
    for (int t = 0; t < 1000; ++t) {
      RatMatrix g = random_rational_matrix(rng, n, 9, 5);
      Rational sum = 0;
      for (const auto& s : perms) sum += s.sign() * psi1(s, g);
      Rational d = det(g);
      if (sum != d) ++bad;
      if (d != 0) {
        Rational total = 0;
        for (const auto& s : perms) total += flip ? Rational(s.sign() * psi0(s, g)) : psi0(s, g);
        if (total != 1) ++badNormalized;
      }
    }
    o.require(bad == 0, "sum sign*psi1 != det for n=" + std::to_string(n));
    o.require(badNormalized == 0, "sum psi0 != 1 for n=" + std::to_string(n));
    o.detail << "n=" << n << ": " << bad + badNormalized << " mismatches/1000; ";
  }
}

void relations(Outcome& o, Rng& rng) {
  const std::size_t expected[] = {0, 0, 0, 1, 14};
  for (int n = 2; n <= 4; ++n) {
    auto basis = relation_kernel_basis(n);
    o.require(basis.size() == expected[n], "rank for n=" + std::to_string(n));
    o.require(basis.size() == expected_relation_rank(n), "rank formula for n=" + std::to_string(n));
    int failures = 0;
    for (const auto& v : basis) failures += v.in_kernel() ? 0 : 1;
    for (int t = 0; t < 200 && !basis.empty(); ++t) {
      RatMatrix g(n, n, Rational(0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = make_rational(uniform(rng, 1, 9) * (uniform(rng, 0, 1) ? 1 : -1), uniform(rng, 1, 5));
      for (const auto& v : basis) failures += verify_relation(v, g) ? 0 : 1;
    }
    o.require(failures == 0, "relation failures for n=" + std::to_string(n));
    o.detail << "n=" << n << ": rank " << basis.size() << ", " << failures << " failures; ";
  }
}

void birkhoff(Outcome& o, Rng& rng) {
  int bad = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = uniform(rng, 1, 6), line = uniform(rng, 1, 10);
    std::vector<std::vector<std::int64_t>> e(n, std::vector<std::int64_t>(n, 0));
    std::vector<int> img(n);
    for (int k = 0; k < line; ++k) {
      for (int i = 0; i < n; ++i) img[i] = i;
      std::shuffle(img.begin(), img.end(), rng);
      for (int i = 0; i < n; ++i) ++e[i][img[i]];
    }
    SemiMagicSquare m = SemiMagicSquare::from_entries(e);
    std::vector<std::vector<std::int64_t>> acc(n, std::vector<std::int64_t>(n, 0));
    std::int64_t total = 0;
    bool positive = true;
    for (const auto& [p, k] : birkhoff_decompose(m)) {
      positive = positive && k > 0;
      total += k;
      for (int i = 0; i < n; ++i) acc[i][p(i)] += k;
    }
    if (!positive || total != line || acc != e) ++bad;
  }
  o.require(bad == 0, "Birkhoff reconstruction");
  o.detail << bad << " bad decompositions of 500";
}

void entropy(Outcome& o) {
  double worst = 0;
  for (int n = 2; n <= 8; ++n) {
    EntropyBounds b = entropy_bounds(symmetric_flow(n));
    worst = std::max({worst, std::abs(b.haar - (n + 1) * n * (n - 1) / 6.0), std::abs(b.newBound - (n + 1) * n / 12.0),
                      std::abs(b.elmvBound - 0.5)});
  }
  o.require(worst <= 1e-12, "entropy closed forms");
  EntropyBounds b3 = entropy_bounds(symmetric_flow(3));
  o.require(b3.haar == 4.0 && b3.newBound == 1.0 && b3.elmvBound == 0.5, "n=3 values (4, 1, 0.5)");
  char buf[128];
  std::snprintf(buf, sizeof buf, "max deviation %.3g; n=3 -> (%g, %g, %g)", worst, b3.haar, b3.newBound, b3.elmvBound);
  o.detail << buf;
}

void rank(Outcome& o) {
  o.require(rank_obstruction(1) == 5 && rank_obstruction(2) == 23 && rank_obstruction(3) == 59, "N_R values");
  o.detail << "N_1=" << rank_obstruction(1) << " N_2=" << rank_obstruction(2) << " N_3=" << rank_obstruction(3);
}

void galois(Outcome& o, Rng& rng) {
  const std::vector<IntPoly> quads = {ints({-2, 0, 1}), ints({-5, 0, 1}), ints({1, 0, 1}), ints({-1, -1, 1}),
                                      ints({-3, 1, 1})};
  int quadFails = 0, quadChecks = 0;
  for (const auto& f : quads) {
    TorusFixture fx = build_fixture(f);
    for (int t = 0; t < 100; ++t) {
      RatMatrix g = random_nonsingular(rng, 2, 9, 5);
      for (const auto& s : all_permutations(2))
        for (const auto& tau : fx.galois) {
          ++quadChecks;
          quadFails += galois_equivariance_check(fx, g, s, tau).ok ? 0 : 1;
        }
    }
  }
  o.require(quadFails == 0, "quadratic equivariance");

  TorusFixture cubic = build_fixture(ints({-1, -1, 0, 1}));
  o.require(cubic.galois.size() == 6 && is_2transitive(cubic.galois, 3), "x^3-x-1 has 2-transitive S_3");
  int cubicFails = 0, cubicChecks = 0;
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    RatMatrix g = random_nonsingular(rng, 3, 5, 1);
    for (const auto& s : all_permutations(3))
      for (const auto& tau : cubic.galois) {
        EquivarianceResult e = galois_equivariance_check(cubic, g, s, tau);
        double diff = std::abs(e.lhs.approx().value() - e.rhs.approx().value());
        worst = std::max(worst, diff);
        ++cubicChecks;
        cubicFails += (e.ok && diff <= 1e-9 * std::max(1.0, e.rhs.approx().abs())) ? 0 : 1;
      }
  }
  o.require(cubicFails == 0, "cubic equivariance within 1e-9");
  o.require(cubicChecks == 50 * 36, "all 36 pairs per matrix");

  TorusFixture control = build_fixture(ints({-1, -3, 0, 1}));
  o.require(control.galois.size() == 3 && !is_2transitive(control.galois, 3), "x^3-3x-1 is C_3, not 2-transitive");
  char buf[160];
  std::snprintf(buf, sizeof buf, "quadratic %d/%d exact; cubic %d/%d within tol (max diff %.2g); control |G|=%zu",
                quadChecks - quadFails, quadChecks, cubicChecks - cubicFails, cubicChecks, worst, control.galois.size());
  o.detail << buf;
}

// All 3x3 matrices with entries in {-1, 0, 1} and nonzero determinant.
std::vector<RatMatrix> small_matrices() {
  std::vector<RatMatrix> out;
  for (int code = 0; code < 19683; ++code) {
    RatMatrix g(3, 3, Rational(0));
    int c = code;
    for (int k = 0; k < 9; ++k, c /= 3) g(k / 3, k % 3) = c % 3 - 1;
    if (det(g) != 0) out.push_back(g);
  }
  return out;
}

void propagation(Outcome& o, Rng& rng) {
  const Permutation rot = Permutation::parse("(1 2 3)", 3);
  auto mats = small_matrices();

  TorusFixture s3 = build_fixture(ints({-1, -1, 0, 1}));
  int synthetic = 0, synthFailures = 0;
  while (synthetic < 20) {
    RatMatrix t(3, 3, Rational(0));
    for (const auto& b : s3.algebra.basisMatrices) t += b * make_rational(uniform(rng, -9, 9), uniform(rng, 1, 4));
    if (det(t) == 0) continue;
    ++synthetic;
    bool zero = galois_orbit_product(s3, rot, t).value == 0;
    synthFailures += zero && zero_propagation(s3, t, rot).pass ? 0 : 1;
  }
  o.require(synthFailures == 0, "synthetic torus zeros propagate");
  int hits = 0, nontorus = 0, failures = 0;
  for (const auto& g : mats) {
    if (galois_orbit_product(s3, rot, g).value != 0) continue;
    ++hits;
    Permutation s0 = fixture_psi(s3, rot, g).is_zero_value() ? rot : rot.inverse();
    if (!s3.algebra.contains(g)) ++nontorus;
    if (!zero_propagation(s3, g, s0).pass) ++failures;
  }
  o.require(hits > 0, "S_3 search found a zero");
  o.require(failures == 0, "S_3 zeros propagate");

  TorusFixture c3 = build_fixture(ints({-1, -3, 0, 1}));
  int c3hits = 0, nonprop = 0;
  bool rejected = true;
  for (const auto& g : mats) {
    if (galois_orbit_product(c3, rot, g).value != 0) continue;
    ++c3hits;
    if (propagation_report(c3, g).pass) continue;
    ++nonprop;
    try {
      zero_propagation(c3, g, rot);
      rejected = false;
    } catch (const Error& e) {
      rejected = rejected && e.code() == ErrorCode::PreconditionsFailed;
    }
  }
  o.require(nonprop > 0, "C_3 control has a non-propagating zero");
  o.require(rejected, "C_3 control rejected by preconditions");
  o.detail << "S_3: " << synthetic - synthFailures << "/" << synthetic << " synthetic zeros propagate, search " << hits << " zeros (" << nontorus << " outside the torus), " << failures
           << " failures; C_3: " << c3hits << " zeros, " << nonprop << " non-propagating";
}

void pgl2(Outcome& o, std::uint64_t seed) {
  std::vector<long> ds;
  for (long d = 2; d <= 199; ++d)
    if (is_squarefree(d) && (d % 4 == 2 || d % 4 == 3)) ds.push_back(d);
  FlowElement a({1.0, -1.0});
  struct PerD {
    std::size_t pairs = 0, sum = 0, integral = 0, floor = 0, identity = 0;
  };
  std::vector<PerD> res(ds.size());
  parallel_for(ds.size(), [&](std::size_t k) {
    const long d = ds[k];
    PacketReport rep = packet_experiment(d, a, 0.1, 0.0);
    PerD& r = res[k];
    r.pairs = rep.rows.size();
    for (const auto& row : rep.rows) {
      r.sum += row.psiPlus + row.psiMinus == 1 ? 0 : 1;
      r.integral += is_integer(Rational(4 * d * row.psiMinus)) ? 0 : 1;
      r.floor += row.inTorus || abs(row.psiMinus) >= make_rational(1, 4 * d) ? 0 : 1;
    }
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(d));
    BinaryQuadraticForm qT = torus_form(d);
    for (int t = 0; t < 20; ++t) {
      RatMatrix delta = random_nonsingular(rng, 2, 9, 4);
      DiscIdentity id = psi_disc_identity(qT, delta);
      r.identity += id.holds && id.lhs == id.rhs ? 0 : 1;
    }
  });
  PerD total;
  for (const auto& r : res) {
    total.pairs += r.pairs;
    total.sum += r.sum;
    total.integral += r.integral;
    total.floor += r.floor;
    total.identity += r.identity;
  }
  o.require(total.sum == 0, "psi(+1) + psi(-1) = 1");
  o.require(total.integral == 0, "4d psi(-1) integral");
  o.require(total.floor == 0, "|psi(-1)| >= 1/(4d) off the torus");
  o.require(total.identity == 0, "form identity on random delta");
  o.detail << ds.size() << " discriminants, " << total.pairs << " class pairs; violations: sum " << total.sum
           << ", integrality " << total.integral << ", floor " << total.floor << ", identity " << total.identity << "/"
           << 20 * ds.size();
}

void decay(Outcome& o, std::uint64_t seed) {
  DecayReport rep = decay_experiment(FlowElement({1.0, -1.0}), 0.1, 10, 1000, seed);
  double sup = 0;
  bool trend = true;
  for (const auto& row : rep.rows) {
    if (row.tau >= 1) sup = std::max(sup, row.supRatio);
    if (row.tau > 3) trend = trend && row.supRatio <= 1.05 * rep.rows[row.tau - 1].supRatio;
  }
  o.require(std::isfinite(sup) && sup <= 10.0, "sup ratio bounded by 10");
  o.require(trend, "non-increasing beyond tau = 3 within 5%");
  char buf[96];
  std::snprintf(buf, sizeof buf, "constant %.6g over tau 1..10", sup);
  o.detail << buf;
}

// Independent oracle: discriminant of a monic polynomial from the Sylvester resultant.
Integer laplace_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    Integer term = m[0][c] * laplace_det(minor);
    acc += c % 2 ? Integer(-term) : term;
  }
  return acc;
}

Integer resultant_discriminant(const IntPoly& f) {
  const std::size_t n = f.size() - 1;
  IntPoly df;
  for (std::size_t k = 1; k <= n; ++k) df.push_back(f[k] * static_cast<long>(k));
  const std::size_t size = 2 * n - 1;
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, 0));
  for (std::size_t r = 0; r < n - 1; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[r][r + k] = f[n - k];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) s[n - 1 + r][r + k] = df[n - 1 - k];
  Integer res = laplace_det(s);
  return (n * (n - 1) / 2) % 2 ? Integer(-res) : res;
}

void discriminants(Outcome& o, Rng& rng) {
  int quadBad = 0, count = 0;
  for (long d = 2; count < 50; ++d) {
    if (!is_squarefree(d)) continue;
    ++count;
    EtaleAlgebra a = etale_from_poly(ints({-d, 0, 1}));
    quadBad += order_discriminant(a.basisMatrices) == 4 * d ? 0 : 1;
  }
  o.require(quadBad == 0, "relDisc(Z[sqrt d]) = 4d");

  int cubicBad = 0, cubics = 0;
  while (cubics < 30) {
    IntPoly f = ints({uniform(rng, -9, 9), uniform(rng, -9, 9), uniform(rng, -9, 9), 1});
    if (resultant_discriminant(f) == 0) continue;
    ++cubics;
    EtaleAlgebra a = etale_from_poly(f);
    cubicBad += order_discriminant(a.basisMatrices) == resultant_discriminant(f) ? 0 : 1;
  }
  o.require(cubicBad == 0, "cubic relDisc equals resultant discriminant");

  double worst = 0;
  for (const auto& f : {ints({-1, -1, 0, 1}), ints({-2, 0, 1}), ints({-1, -3, 0, 1}), ints({1, 0, 1})}) {
    EtaleAlgebra a = etale_from_poly(f);
    const int n = static_cast<int>(a.n);
    std::vector<NumMatrix> base;
    for (const auto& m : a.basisMatrices) base.push_back(to_num(m));
    const double ref = archimedean_discriminant(base);
    for (int t = 0; t < 10; ++t) {
      std::vector<RatMatrix> b = a.basisMatrices;
      for (int step = 0; step < 8; ++step) {
        int i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 1);
        if (i == j) continue;
        if (uniform(rng, 0, 3) == 0)
          std::swap(b[i], b[j]);
        else
          b[i] = b[i] + b[j] * Rational(uniform(rng, -2, 2));
      }
      std::vector<NumMatrix> nb;
      for (const auto& m : b) nb.push_back(to_num(m));
      worst = std::max(worst, std::abs(archimedean_discriminant(nb) - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  o.require(worst <= 1e-9, "archimedean discriminant unimodular invariance");
  char buf[160];
  std::snprintf(buf, sizeof buf, "quadratic %d/50, cubic %d/%d match; archimedean max rel change %.2g", 50 - quadBad,
                cubics - cubicBad, cubics, worst);
  o.detail << buf;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> list = {
      {1, "leibniz", 10},  {2, "relations", 30},   {3, "birkhoff", 10}, {4, "entropy", 1},
      {5, "rank", 1},      {6, "galois", 60},      {7, "propagation", 10}, {8, "pgl2", 300},
      {9, "decay", 30},    {10, "discriminant", 10},
  };
  return list;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log) {
  std::vector<std::string> wanted;
  std::stringstream ss(opts.filter);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) wanted.push_back(item);
  auto selected = [&](const CriterionInfo& c) {
    if (wanted.empty()) return true;
    for (const auto& w : wanted)
      if (w == c.tag || w == std::to_string(c.id)) return true;
    return false;
  };
  std::vector<CriterionInfo> run;
  for (const auto& c : acceptance_criteria())
    if (selected(c)) run.push_back(c);
  if (run.empty()) throw Error(ErrorCode::SchemaMismatch, "filter '" + opts.filter + "' selects no criterion");

  std::vector<CriterionResult> out;
  for (const auto& c : run) {
    Outcome o;
    Rng rng(opts.seed * 7919ULL + static_cast<std::uint64_t>(c.id));
    auto start = std::chrono::steady_clock::now();
    try {
      switch (c.id) {
        case 1: leibniz(o, rng, opts.flipPsi0Sign); break;
        case 2: relations(o, rng); break;
        case 3: birkhoff(o, rng); break;
        case 4: entropy(o); break;
        case 5: rank(o); break;
        case 6: galois(o, rng); break;
        case 7: propagation(o, rng); break;
        case 8: pgl2(o, opts.seed); break;
        case 9: decay(o, opts.seed); break;
        case 10: discriminants(o, rng); break;
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    CriterionResult r;
    r.id = c.id;
    r.tag = c.tag;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.limitSeconds = c.limitSeconds;
    o.require(r.seconds <= c.limitSeconds, "runtime limit");
    r.pass = o.pass;
    r.detail = o.detail.str();
    log << format_result(r) << std::endl;
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-12s (%.2f s, limit %g s) ", r.pass ? "PASS" : "FAIL", r.id, r.tag.c_str(),
                r.seconds, r.limitSeconds);
  return head + r.detail;
}

}  // namespace torusinv::app
