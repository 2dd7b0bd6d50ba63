#include "torusinv_app/cli.hpp"

#include "torusinv/discriminants.hpp"
#include "torusinv/parallel.hpp"
#include "torusinv/pgl2.hpp"
#include "torusinv/relations.hpp"
#include "torusinv_app/acceptance.hpp"
#include "torusinv_app/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <random>

namespace torusinv::app {

namespace {

struct Globals {
  bool json = false;
  bool csv = false;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string out;
};

[[noreturn]] void input_error(const std::string& why) { throw Error(ErrorCode::SchemaMismatch, why); }

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ReconstructionFailed:
    case ErrorCode::NumericallyIndeterminate:
    case ErrorCode::PreconditionsFailed:
      return kExitCheckFailed;
    default:
      return kExitInputError;
  }
}

Rational random_rational(std::mt19937_64& rng, int numBound, int denBound) {
  std::uniform_int_distribution<int> p(-numBound, numBound), q(1, denBound);
  return make_rational(p(rng), q(rng));
}

RatMatrix random_nonzero_matrix(std::mt19937_64& rng, int n) {
  RatMatrix g(n, n, Rational(0));
  std::uniform_int_distribution<int> p(1, 9), q(1, 5), s(0, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = make_rational(s(rng) ? p(rng) : -p(rng), q(rng));
  return g;
}

Json perm_list(const std::vector<Permutation>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

Json poly_json(const IntPoly& f) {
  Json a = Json::array();
  for (const auto& c : f) a.push_back(c.get_str());
  return a;
}

FlowElement flow_from(const std::vector<double>& weights, int n) {
  if (weights.empty()) return symmetric_flow(n);
  if (static_cast<int>(weights.size()) != n)
    input_error("expected " + std::to_string(n) + " weights, got " + std::to_string(weights.size()));
  return FlowElement(weights);
}

class Runner {
 public:
  Runner(const Globals& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

  std::ostream& sink() {
    if (g_.out.empty()) return out_;
    if (!file_) {
      file_ = std::make_unique<std::ofstream>(g_.out, std::ios::binary);
      if (!*file_) throw Error(ErrorCode::InputParseError, g_.out + ": cannot open for writing");
    }
    return *file_;
  }

  void emit(const Json& j) { sink() << j.dump(2) << "\n"; }

  void csv_begin(const std::vector<std::string>& header) {
    sink() << csv_header_comment(g_.seed) << "\r\n";
    write_csv_row(sink(), header);
  }

  std::ostream& err() { return err_; }
  const Globals& globals() const { return g_; }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
};

// psi
struct PsiArgs {
  std::string matrix, fixture, mode = "pgl";
  bool psi1 = false, dual = false;
};

template <class T>
Json dual_values(const TorusFixture& fx, const Matrix<T>& g, const std::vector<Matrix<T>>& basis,
                 const std::vector<Matrix<T>>& dual, const std::vector<Matrix<T>>& idems) {
  Json vals = Json::object();
  for (const auto& s : all_permutations(static_cast<int>(fx.n())))
    vals[s.to_string()] = to_string(psi_torus_dual(s, g, basis, dual, idems));
  return vals;
}

int cmd_psi(Runner& r, const PsiArgs& a) {
  if (a.mode != "pgl" && a.mode != "sl") input_error("--mode must be pgl or sl");
  const PsiMode mode = a.mode == "sl" ? PsiMode::SL : PsiMode::PGL;
  RatMatrix g = parse_matrix(load_json_file(a.matrix), a.matrix + "#");
  const int n = static_cast<int>(g.rows());
  auto perms = all_permutations(n);
  Json doc;
  doc["mode"] = a.mode;
  doc["det"] = to_string(det(g));
  std::vector<std::pair<std::string, std::string>> rows;
  if (a.fixture.empty()) {
    doc["kind"] = a.psi1 ? "psi1" : "psi0";
    if (a.psi1) {
      for (const auto& s : perms) rows.emplace_back(s.to_string(), to_string(psi1(s, g)));
    } else {
      auto v = psi0_vector(g, mode);
      for (std::size_t k = 0; k < perms.size(); ++k) rows.emplace_back(perms[k].to_string(), to_string(v.values[k]));
    }
  } else {
    TorusFixture fx = parse_fixture(load_json_file(a.fixture), a.fixture + "#");
    if (fx.n() != g.rows()) input_error("matrix size " + std::to_string(n) + " does not match fixture degree");
    doc["kind"] = "torus";
    doc["backend"] = fx.backend == Backend::Quad ? "quad" : "numeric";
    if (mode == PsiMode::SL && det(g) != 1) throw Error(ErrorCode::PreconditionsFailed, "SL mode requires det g = 1");
    auto vals = fixture_psi_vector(fx, g);
    for (std::size_t k = 0; k < perms.size(); ++k) rows.emplace_back(perms[k].to_string(), vals[k].str());
    FiberReport fr = fixture_fiber_test(fx, g);
    doc["fiber"] = {{"trivial", fr.fiberTrivial}, {"commutes", fr.commutes}, {"inFiberAndTorus", fr.inFiberAndTorus()}};
    if (a.dual) {
      const auto& basis = fx.algebra.orderBasis;
      auto dual = dual_basis(fx.algebra, basis);
      if (fx.backend == Backend::Quad) {
        auto cvt = [&](const std::vector<RatMatrix>& v) {
          std::vector<QuadMatrix> o;
          for (const auto& m : v) o.push_back(to_quad(m, fx.d));
          return o;
        };
        doc["dualValues"] = dual_values(fx, to_quad(g, fx.d), cvt(basis), cvt(dual), fx.quadIdems);
      } else {
        auto cvt = [](const std::vector<RatMatrix>& v) {
          std::vector<NumMatrix> o;
          for (const auto& m : v) o.push_back(to_num(m));
          return o;
        };
        doc["dualValues"] = dual_values(fx, to_num(g), cvt(basis), cvt(dual), fx.numIdems);
      }
    }
  }
  if (r.globals().csv) {
    r.csv_begin({"sigma", "value"});
    for (const auto& [s, v] : rows) write_csv_row(r.sink(), {s, v});
    return kExitOk;
  }
  Json values = Json::object();
  for (const auto& [s, v] : rows) values[s] = v;
  doc["values"] = values;
  r.emit(doc);
  return kExitOk;
}

// magic-decompose
int cmd_magic(Runner& r, const std::string& path) {
  auto entries = parse_int_matrix(load_json_file(path), path + "#");
  SemiMagicSquare m = SemiMagicSquare::from_entries(entries);
  auto terms = birkhoff_decompose(m);
  std::vector<std::vector<std::int64_t>> acc(m.n, std::vector<std::int64_t>(m.n, 0));
  std::int64_t total = 0;
  std::vector<Permutation> family;
  for (const auto& [p, k] : terms) {
    SemiMagicSquare pm = perm_matrix(p);
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) acc[i][j] += k * pm.entries[i][j];
    total += k;
    family.push_back(p);
  }
  const bool ok = acc == m.entries && total == m.lineSum;
  if (r.globals().csv) {
    r.csv_begin({"perm", "mult"});
    for (const auto& [p, k] : terms) write_csv_row(r.sink(), {p.to_string(), std::to_string(k)});
  } else {
    Json t = Json::array();
    for (const auto& [p, k] : terms) {
      Json roots = Json::array();
      for (const auto& [j, i] : root_set(p)) roots.push_back({j, i});
      t.push_back({{"perm", p.to_string()}, {"mult", k}, {"rootSet", roots}});
    }
    Json doc;
    doc["n"] = m.n;
    doc["lineSum"] = m.lineSum;
    doc["terms"] = t;
    doc["completeRootSet"] = m.n > 0 && has_complete_root_set(family, m.n);
    doc["reconstructed"] = ok;
    r.emit(doc);
  }
  if (!ok) {
    r.err() << "check failed: decomposition does not re-sum to the input\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// relations
int cmd_relations(Runner& r, const std::vector<int>& pos, bool verify, bool monomials) {
  if (pos.empty() || pos.size() > 2) input_error("usage: relations [--verify] n [trials]");
  const int n = pos[0];
  if (n < 1) input_error("n must be positive");
  auto basis = relation_kernel_basis(n);
  auto perms = all_permutations(n);
  if (verify) {
    const int trials = pos.size() > 1 ? pos[1] : 200;
    if (trials < 0) input_error("trials must be non-negative");
    std::mt19937_64 rng(r.globals().seed);
    int failures = 0;
    Json failing = Json::array();
    for (int t = 0; t < trials; ++t) {
      RatMatrix g = random_nonzero_matrix(rng, n);
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (!verify_relation(basis[k], g)) {
          ++failures;
          failing.push_back({{"trial", t}, {"vector", k}});
        }
    }
    int kernelFailures = 0;
    for (const auto& v : basis) kernelFailures += v.in_kernel() ? 0 : 1;
    Json doc;
    doc["n"] = n;
    doc["seed"] = r.globals().seed;
    doc["vectors"] = basis.size();
    doc["expectedRank"] = expected_relation_rank(n);
    doc["trials"] = trials;
    doc["kernelFailures"] = kernelFailures;
    doc["failures"] = failures;
    doc["failing"] = failing;
    r.emit(doc);
    if (failures || kernelFailures || basis.size() != expected_relation_rank(n)) {
      r.err() << "check failed: " << failures << " relation failures, " << kernelFailures << " kernel failures\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  }
  if (r.globals().csv) {
    r.csv_begin({"vector", "sigma", "coefficient"});
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t p = 0; p < perms.size(); ++p)
        if (basis[k].f[p]) write_csv_row(r.sink(), {std::to_string(k), perms[p].to_string(), std::to_string(basis[k].f[p])});
    return kExitOk;
  }
  Json doc = Json::array();
  for (const auto& v : basis) {
    if (monomials) {
      RelationMonomials m = relation_monomials(v);
      Json pj = Json::object(), nj = Json::object();
      for (const auto& [p, e] : m.pos) pj[p.to_string()] = e;
      for (const auto& [p, e] : m.neg) nj[p.to_string()] = e;
      doc.push_back({{"pos", pj}, {"neg", nj}});
    } else {
      Json o = Json::object();
      for (std::size_t p = 0; p < perms.size(); ++p)
        if (v.f[p]) o[perms[p].to_string()] = v.f[p];
      doc.push_back(o);
    }
  }
  r.emit(doc);
  return kExitOk;
}

// galois-verify
int cmd_galois(Runner& r, const std::string& fixPath, const std::string& matPath, const std::string& sigma0Text) {
  TorusFixture fx = parse_fixture(load_json_file(fixPath), fixPath + "#");
  RatMatrix g = parse_matrix(load_json_file(matPath), matPath + "#");
  const int n = static_cast<int>(fx.n());
  if (static_cast<int>(g.rows()) != n) input_error("matrix size does not match fixture degree");
  const double tol = r.globals().tolerance;
  Json checks = Json::array();
  bool pass = true;
  for (const auto& s : all_permutations(n))
    for (const auto& t : fx.galois) {
      EquivarianceResult e = galois_equivariance_check(fx, g, s, t);
      bool ok = e.ok;
      if (fx.backend == Backend::Numeric) {
        double scale = std::max(1.0, e.rhs.approx().abs());
        ok = std::abs(e.lhs.approx().value() - e.rhs.approx().value()) <= tol * scale;
      }
      pass = pass && ok;
      checks.push_back({{"sigma", s.to_string()}, {"tau", t.to_string()}, {"lhs", e.lhs.str()}, {"rhs", e.rhs.str()},
                        {"ok", ok}});
    }
  Json doc;
  doc["f"] = poly_json(fx.algebra.f);
  doc["backend"] = fx.backend == Backend::Quad ? "quad" : "numeric";
  doc["galois"] = perm_list(fx.galois);
  doc["twoTransitive"] = n >= 2 && is_2transitive(fx.galois, n);
  doc["checks"] = checks;
  doc["pass"] = pass;
  bool propagationFailed = false;
  if (!sigma0Text.empty()) {
    Permutation s0;
    try {
      s0 = Permutation::parse(sigma0Text, n);
    } catch (const Error& e) {
      input_error(std::string("--sigma0: ") + e.what());
    }
    OrbitProduct op = galois_orbit_product(fx, s0, g);
    doc["orbitProduct"] = {{"orbit", perm_list(op.orbit)}, {"value", to_string(op.value)}, {"raw", to_string(op.raw)}};
    Json prop;
    try {
      PropagationReport pr = zero_propagation(fx, g, s0);
      prop["preconditions"] = "ok";
      prop["pass"] = pr.pass;
      propagationFailed = !pr.pass;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionsFailed) throw;
      PropagationReport pr = propagation_report(fx, g);
      prop["preconditions"] = e.what();
      prop["pass"] = pr.pass;
    }
    doc["propagation"] = prop;
  }
  r.emit(doc);
  if (!pass || propagationFailed) {
    r.err() << "check failed: " << (!pass ? "Galois equivariance" : "zero propagation") << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// discriminant
int cmd_discriminant(Runner& r, const std::string& path) {
  TorusFixture fx = parse_fixture(load_json_file(path), path + "#");
  OrderData o = make_order(fx.algebra);
  std::vector<NumMatrix> nb;
  for (const auto& m : o.basis) nb.push_back(to_num(m));
  const std::size_t k = nb.size();
  Eigen::MatrixXcd gram(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::complex<double> acc = 0;
      for (std::size_t a = 0; a < fx.n(); ++a)
        for (std::size_t b = 0; b < fx.n(); ++b) acc += std::conj(nb[i](a, b).value()) * nb[j](a, b).value();
      gram(i, j) = acc;
    }
  GramFactorization gf = gram_sqrt(gram);
  Json doc;
  doc["f"] = poly_json(fx.algebra.f);
  doc["relDisc"] = o.relDisc.get_str();
  doc["archimedean"] = archimedean_discriminant(nb);
  doc["gramSqrtResidual"] = (gf.reconstruct() - gram).norm();
  r.emit(doc);
  return kExitOk;
}

// certify
int cmd_certify(Runner& r, const std::string& fixPath, const std::string& lamPath, bool ramified) {
  TorusFixture fx = parse_fixture(load_json_file(fixPath), fixPath + "#");
  RatMatrix lambda = parse_matrix(load_json_file(lamPath), lamPath + "#");
  if (lambda.rows() != fx.n()) input_error("lambda size does not match fixture degree");
  OrderData o = make_order(fx.algebra);
  CertificateReport rep = integrality_certificate(lambda, fx, o, ramified);
  if (r.globals().csv) {
    r.csv_begin({"sigma", "witness", "integral"});
    for (const auto& e : rep.entries) write_csv_row(r.sink(), {e.sigma.to_string(), e.witness, e.integral ? "true" : "false"});
  } else {
    Json entries = Json::array();
    for (const auto& e : rep.entries)
      entries.push_back({{"sigma", e.sigma.to_string()}, {"witness", e.witness}, {"integral", e.integral}});
    Json doc;
    doc["D"] = rep.D.get_str();
    doc["exponent"] = rep.exponent;
    doc["ramified"] = rep.ramified;
    doc["pass"] = rep.pass;
    if (!rep.note.empty()) doc["note"] = rep.note;
    doc["entries"] = entries;
    r.emit(doc);
  }
  if (!rep.pass) {
    for (const auto& e : rep.entries)
      if (!e.integral) r.err() << "check failed: witness for " << e.sigma.to_string() << " is not integral\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// entropy-bounds
int cmd_entropy(Runner& r, int n, const std::vector<double>& w) {
  if (n < 1) input_error("n must be positive");
  if (static_cast<int>(w.size()) != n)
    input_error("expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
  EntropyBounds b = entropy_bounds(FlowElement(w));
  if (r.globals().csv) {
    r.csv_begin({"haar", "new", "elmv"});
    write_csv_row(r.sink(), {format_double(b.haar), format_double(b.newBound), format_double(b.elmvBound)});
    return kExitOk;
  }
  Json doc;
  doc["haar"] = b.haar;
  doc["new"] = b.newBound;
  doc["elmv"] = b.elmvBound;
  r.emit(doc);
  return kExitOk;
}

// threshold
struct ThresholdArgs {
  double D = 0, Dram = 1, kappa = 0;
  int n = 3;
  std::vector<double> weights;
  long rank = 0;
};

int cmd_threshold(Runner& r, const ThresholdArgs& a) {
  if (a.D <= 0 || a.Dram <= 0) input_error("--D and --Dram must be positive");
  if (a.n < 2) input_error("--n must be at least 2");
  FlowElement f = flow_from(a.weights, a.n);
  const double h = haar_entropy(f);
  const double tau = separation_threshold(a.D, a.Dram, f, a.kappa);
  Json doc;
  doc["D"] = a.D;
  doc["Dram"] = a.Dram;
  doc["kappa"] = a.kappa;
  doc["haar"] = h;
  doc["tauStar"] = tau;
  doc["kappaSensitivity"] = (f.n() - 1) / (2 * h);
  if (a.rank > 0) doc["rankObstruction"] = rank_obstruction(a.rank);
  if (r.globals().csv) {
    r.csv_begin({"tauStar", "kappaSensitivity"});
    write_csv_row(r.sink(), {format_double(tau), format_double((f.n() - 1) / (2 * h))});
    return kExitOk;
  }
  r.emit(doc);
  return kExitOk;
}

// decay
struct DecayArgs {
  int n = 2;
  double radius = 0.1;
  int tauMax = 10;
  int samples = 1000;
  std::vector<double> weights;
};

int cmd_decay(Runner& r, const DecayArgs& a) {
  if (a.n < 2 || a.n > 6) input_error("--n must be in 2..6");
  if (a.radius <= 0 || a.radius >= 0.5) input_error("--radius must be in (0, 0.5)");
  if (a.tauMax < 0 || a.samples < 1) input_error("--tau-max must be >= 0 and --samples >= 1");
  FlowElement f = flow_from(a.weights, a.n);
  DecayReport rep = decay_experiment(f, a.radius, a.tauMax, a.samples, r.globals().seed);
  if (r.globals().csv) {
    r.csv_begin({"tau", "supRatio", "supIdRatio", "inBall"});
    for (const auto& row : rep.rows)
      write_csv_row(r.sink(), {std::to_string(row.tau), format_double(row.supRatio), format_double(row.supIdRatio),
                               std::to_string(row.inBall)});
    return kExitOk;
  }
  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"tau", row.tau}, {"supRatio", row.supRatio}, {"supIdRatio", row.supIdRatio}, {"inBall", row.inBall}});
  Json doc;
  doc["version"] = kToolVersion;
  doc["seed"] = r.globals().seed;
  doc["n"] = a.n;
  doc["radius"] = a.radius;
  doc["samples"] = a.samples;
  doc["constant"] = rep.constant;
  doc["rows"] = rows;
  r.emit(doc);
  return kExitOk;
}

// pgl2-experiment
struct Pgl2Args {
  long dMin = 2, dMax = 200;
  double radius = 0.1, kappa = 0;
  int identityTrials = 20;
  std::vector<double> weights;
};

int cmd_pgl2(Runner& r, const Pgl2Args& a) {
  if (a.dMin < 2 || a.dMax < a.dMin) input_error("need 2 <= --d-min <= --d-max");
  if (a.radius <= 0 || a.radius >= 0.5) input_error("--radius must be in (0, 0.5)");
  FlowElement f = flow_from(a.weights.empty() ? std::vector<double>{1.0, -1.0} : a.weights, 2);
  std::vector<long> ds;
  for (long d = a.dMin; d <= a.dMax; ++d)
    if (is_squarefree(d) && (d % 4 == 2 || d % 4 == 3)) ds.push_back(d);
  std::vector<PacketReport> reports(ds.size());
  std::vector<int> identityFailures(ds.size(), 0);
  parallel_for(ds.size(), [&](std::size_t k) {
    reports[k] = packet_experiment(ds[k], f, a.radius, a.kappa);
    std::mt19937_64 rng(r.globals().seed * 1000003ULL + static_cast<std::uint64_t>(ds[k]));
    BinaryQuadraticForm qT = torus_form(ds[k]);
    for (int t = 0; t < a.identityTrials;) {
      RatMatrix delta(2, 2, Rational(0));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) delta(i, j) = random_rational(rng, 9, 4);
      if (det(delta) == 0) continue;
      ++t;
      if (!psi_disc_identity(qT, delta).holds) ++identityFailures[k];
    }
  });
  std::size_t rows = 0, violations = 0, idFail = 0;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    rows += reports[k].rows.size();
    for (const auto& row : reports[k].rows) violations += (row.sumIsOne && row.integral && row.floorHolds) ? 0 : 1;
    idFail += identityFailures[k];
  }
  if (r.globals().json) {
    Json out = Json::array();
    for (const auto& rep : reports)
      for (const auto& row : rep.rows)
        out.push_back({{"d", row.d}, {"classIdx_i", row.i}, {"classIdx_j", row.j}, {"psiMinus", to_string(row.psiMinus)},
                       {"integralityWitness", to_string(row.witness)}, {"inTorus", row.inTorus}, {"tauStar", row.tauStar}});
    Json doc;
    doc["version"] = kToolVersion;
    doc["seed"] = r.globals().seed;
    doc["rows"] = out;
    r.emit(doc);
  } else {
    r.csv_begin({"d", "classIdx_i", "classIdx_j", "psiMinus", "integralityWitness", "inTorus", "tauStar"});
    for (const auto& rep : reports)
      for (const auto& row : rep.rows)
        write_csv_row(r.sink(), {std::to_string(row.d), std::to_string(row.i), std::to_string(row.j), to_string(row.psiMinus),
                                 to_string(row.witness), row.inTorus ? "true" : "false", format_double(row.tauStar)});
  }
  r.err() << "pgl2-experiment: " << ds.size() << " discriminants, " << rows << " class pairs, " << violations
          << " violations, " << idFail << " identity failures\n";
  if (violations || idFail) {
    for (const auto& rep : reports)
      for (const auto& row : rep.rows)
        if (!(row.sumIsOne && row.integral && row.floorHolds))
          r.err() << "check failed: d=" << row.d << " pair (" << row.i << "," << row.j << ")\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// acceptance
int cmd_acceptance(Runner& r, const std::string& filter, const std::string& fault) {
  AcceptanceOptions o;
  o.filter = filter;
  o.seed = r.globals().seed;
  if (!fault.empty()) {
    if (fault != "psi0-sign") input_error("unknown fault '" + fault + "'");
    o.flipPsi0Sign = true;
  }
  auto results = run_acceptance(o, r.sink());
  bool all = true;
  for (const auto& x : results) all = all && x.pass;
  r.sink() << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torus double-quotient invariants toolkit", "torusinv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Globals g;
  auto* fmt = app.add_option_group("format");
  fmt->add_flag("--json", g.json, "JSON output");
  fmt->add_flag("--csv", g.csv, "CSV output");
  fmt->require_option(0, 1);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--tolerance", g.tolerance, "Numeric tolerance")->capture_default_str();
  app.add_option("--out", g.out, "Write the report to a file");

  PsiArgs psi;
  auto* cPsi = app.add_subcommand("psi", "Canonical generators of a matrix");
  cPsi->add_option("matrix", psi.matrix, "Matrix JSON file")->required();
  cPsi->add_option("--fixture", psi.fixture, "Torus fixture JSON file");
  cPsi->add_option("--mode", psi.mode, "pgl or sl")->capture_default_str();
  cPsi->add_flag("--psi1", psi.psi1, "Emit the unnormalized products");
  cPsi->add_flag("--dual", psi.dual, "Also evaluate the dual-basis form");

  std::string magicPath;
  auto* cMagic = app.add_subcommand("magic-decompose", "Birkhoff decomposition of a semi-magic square");
  cMagic->add_option("square", magicPath, "Square JSON file")->required();

  std::vector<int> relPos;
  bool relVerify = false, relMono = false;
  auto* cRel = app.add_subcommand("relations", "Integer relations among the generators");
  cRel->add_option("n_trials", relPos, "n [trials]")->required()->expected(1, 2);
  cRel->add_flag("--verify", relVerify, "Verify on random matrices");
  cRel->add_flag("--monomials", relMono, "Print monomial exponents");

  std::string galFix, galMat, galSigma0;
  auto* cGal = app.add_subcommand("galois-verify", "Galois equivariance checks");
  cGal->add_option("fixture", galFix, "Fixture JSON file")->required();
  cGal->add_option("matrix", galMat, "Matrix JSON file")->required();
  cGal->add_option("--sigma0", galSigma0, "Orbit product and zero propagation for this permutation");

  std::string discFix;
  auto* cDisc = app.add_subcommand("discriminant", "Relative and archimedean discriminants");
  cDisc->add_option("fixture", discFix, "Fixture JSON file")->required();

  std::string certFix, certLam;
  bool certRam = false;
  auto* cCert = app.add_subcommand("certify", "Integrality certificate");
  cCert->add_option("fixture", certFix, "Fixture JSON file")->required();
  cCert->add_option("lambda", certLam, "Matrix JSON file")->required();
  cCert->add_flag("--ramified", certRam, "Use the ramified exponent");

  int entN = 0;
  std::vector<double> entW;
  auto* cEnt = app.add_subcommand("entropy-bounds", "Entropy bounds for a flow element");
  cEnt->add_option("n", entN, "Degree")->required();
  cEnt->add_option("weights", entW, "Log weights")->required();

  ThresholdArgs th;
  auto* cTh = app.add_subcommand("threshold", "Separation threshold");
  cTh->add_option("--D", th.D, "Discriminant")->required();
  cTh->add_option("--Dram", th.Dram, "Ramified discriminant")->capture_default_str();
  cTh->add_option("--kappa", th.kappa, "Additive constant")->capture_default_str();
  cTh->add_option("--n", th.n, "Degree")->capture_default_str();
  cTh->add_option("--weights", th.weights, "Log weights")->allow_extra_args();
  cTh->add_option("--rank", th.rank, "Also report the rank obstruction N_R");

  DecayArgs dc;
  auto* cDecay = app.add_subcommand("decay", "Decay of generators on Bowen balls");
  cDecay->add_option("--n", dc.n, "Degree")->capture_default_str();
  cDecay->add_option("--radius", dc.radius, "Ball radius")->capture_default_str();
  cDecay->add_option("--tau-max", dc.tauMax, "Largest depth")->capture_default_str();
  cDecay->add_option("--samples", dc.samples, "Samples per depth")->capture_default_str();
  cDecay->add_option("--weights", dc.weights, "Log weights")->allow_extra_args();

  Pgl2Args pg;
  auto* cPg = app.add_subcommand("pgl2-experiment", "Real quadratic packet experiment");
  cPg->add_option("--d-min", pg.dMin, "Smallest d")->capture_default_str();
  cPg->add_option("--d-max", pg.dMax, "Largest d")->capture_default_str();
  cPg->add_option("--radius", pg.radius, "Ball radius")->capture_default_str();
  cPg->add_option("--kappa", pg.kappa, "Additive constant")->capture_default_str();
  cPg->add_option("--identity-trials", pg.identityTrials, "Random checks of the form identity per d")
      ->capture_default_str();
  cPg->add_option("--weights", pg.weights, "Log weights")->allow_extra_args();

  std::string accFilter, accFault;
  auto* cAcc = app.add_subcommand("acceptance", "Run the acceptance criteria");
  cAcc->add_option("--filter", accFilter, "Criterion ids or tags, comma-separated");
  cAcc->add_option("--inject-fault", accFault, "Mutation self-test (psi0-sign)");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (!(g.tolerance > 0)) {
    err << "error: --tolerance must be positive\n";
    return kExitInputError;
  }

  Runner r(g, out, err);
  try {
    if (*cPsi) return cmd_psi(r, psi);
    if (*cMagic) return cmd_magic(r, magicPath);
    if (*cRel) return cmd_relations(r, relPos, relVerify, relMono);
    if (*cGal) return cmd_galois(r, galFix, galMat, galSigma0);
    if (*cDisc) return cmd_discriminant(r, discFix);
    if (*cCert) return cmd_certify(r, certFix, certLam, certRam);
    if (*cEnt) return cmd_entropy(r, entN, entW);
    if (*cTh) return cmd_threshold(r, th);
    if (*cDecay) return cmd_decay(r, dc);
    if (*cPg) return cmd_pgl2(r, pg);
    if (*cAcc) return cmd_acceptance(r, accFilter, accFault);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace torusinv::app
