#include "torusinv/tori.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace torusinv {

NumComplex FieldValue::approx() const {
  if (backend == Backend::Numeric) return z;
  double a = q.a().get_d(), b = q.b().get_d();
  double v = a + b * std::sqrt(std::abs(static_cast<double>(q.d())));
  if (q.d() < 0) return NumComplex(std::complex<double>(a, b * std::sqrt(-static_cast<double>(q.d()))),
                                   4 * NumComplex::kUnit * (std::abs(a) + std::abs(b) * std::sqrt(-q.d())));
  return NumComplex(v, 0.0, 4 * NumComplex::kUnit * (std::abs(a) + std::abs(v)));
}

bool FieldValue::is_zero_value() const { return backend == Backend::Quad ? is_zero(q) : is_zero(z); }

std::string FieldValue::str() const { return backend == Backend::Quad ? to_string(q) : to_string(z); }

std::vector<QuadMatrix> lagrange_idempotents(const EtaleAlgebra& a, const std::vector<QuadExt>& roots) {
  long d = 0;
  for (const auto& r : roots) d = r.d() != 0 ? r.d() : d;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    QuadExt acc = QuadExt(d, Rational(a.f.back()));
    for (std::size_t k = a.f.size() - 1; k-- > 0;) acc = acc * roots[i] + QuadExt(d, Rational(a.f[k]));
    if (!is_zero(acc))
      throw Error(ErrorCode::RootResidualTooLarge, "f(root " + std::to_string(i + 1) + ") != 0");
  }
  return lagrange_idempotents(to_quad(a.xMatrix, d), roots);
}

namespace {

NumComplex eval_num(const IntPoly& f, const NumComplex& x) {
  NumComplex acc = NumComplex::from_rational(Rational(f.back()));
  for (std::size_t k = f.size() - 1; k-- > 0;) acc = acc * x + NumComplex::from_rational(Rational(f[k]));
  return acc;
}

}  // namespace

std::vector<NumMatrix> lagrange_idempotents(const EtaleAlgebra& a, const std::vector<NumComplex>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    // Residual must be explained by the root's error radius.
    NumComplex r = eval_num(a.f, roots[i]);
    NumComplex h(roots[i].abs() + 1.0, 0.0, 0.0);
    double scale = 0.0;
    double power = 1.0;
    for (std::size_t k = 0; k < a.f.size(); ++k) {
      scale += std::abs(a.f[k].get_d()) * power;
      power *= h.re();
    }
    if (r.abs() > r.eps() + 1e-8 * scale)
      throw Error(ErrorCode::RootResidualTooLarge, "|f(root " + std::to_string(i + 1) + ")| too large");
  }
  return lagrange_idempotents(to_num(a.xMatrix), roots);
}

std::vector<NumComplex> numeric_roots(const IntPoly& f) {
  using cld = std::complex<long double>;
  const int n = static_cast<int>(f.size()) - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) comp(j + 1, j) = 1.0;
  for (int k = 0; k < n; ++k) comp(k, n - 1) = -f[k].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::RootResidualTooLarge, "eigenvalue solver failed");

  std::vector<long double> c(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) c[k] = static_cast<long double>(f[k].get_d());
  auto eval = [&](cld z, cld& fz, cld& dfz, long double& bound) {
    fz = c[n];
    dfz = 0;
    bound = std::abs(c[n]);
    for (int k = n - 1; k >= 0; --k) {
      dfz = dfz * z + fz;
      fz = fz * z + c[k];
      bound = bound * std::abs(z) + std::abs(c[k]);
    }
  };
  const long double uLd = std::numeric_limits<long double>::epsilon() / 2;
  std::vector<NumComplex> roots;
  for (int i = 0; i < n; ++i) {
    cld z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    cld fz, dfz;
    long double bound;
    for (int it = 0; it < 8; ++it) {
      eval(z, fz, dfz, bound);
      if (std::abs(dfz) == 0) break;
      z -= fz / dfz;
    }
    eval(z, fz, dfz, bound);
    long double evalErr = 4.0L * n * uLd * bound;
    long double derivErr = 4.0L * n * n * uLd * bound / std::max<long double>(std::abs(z), 1.0L);
    long double denom = std::abs(dfz) - derivErr;
    std::complex<double> zd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    double radius = denom > 0 ? static_cast<double>(n * (std::abs(fz) + evalErr) / denom)
                              : std::numeric_limits<double>::infinity();
    radius += 2.0 * NumComplex::kUnit * std::abs(zd);
    if (radius > 1e-8 * std::max(1.0, std::abs(zd)))
      throw Error(ErrorCode::RootResidualTooLarge, "root error radius too large");
    double im = std::abs(zd.imag()) <= radius ? 0.0 : zd.imag();
    roots.emplace_back(std::complex<double>(zd.real(), im), radius);
  }
  std::sort(roots.begin(), roots.end(), [](const NumComplex& a, const NumComplex& b) {
    if (std::abs(a.re() - b.re()) > a.eps() + b.eps()) return a.re() < b.re();
    return a.im() < b.im();
  });
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(roots[i].value() - roots[j].value()) <= 2 * (roots[i].eps() + roots[j].eps()))
        throw Error(ErrorCode::RepeatedRoots, "roots are not separated");
  return roots;
}

namespace {

// Galois-stable symmetrizations of integer monomials in the roots must be
// rational integers.
bool orbit_sums_integral(const PermGroup& g, const std::vector<NumComplex>& roots) {
  const int n = static_cast<int>(roots.size());
  std::vector<std::vector<int>> exps;
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = i;
  exps.push_back(e);
  for (int i = 0; i < n; ++i) e[i] = (i * i + 1) % 3;
  exps.push_back(e);
  for (int i = 0; i < n; ++i) e[i] = i == 0 ? 1 : 0;
  exps.push_back(e);
  for (int i = 0; i < n; ++i) e[i] = i < 2 ? 1 : 0;
  exps.push_back(e);
  for (const auto& ex : exps) {
    NumComplex s(0.0);
    for (const auto& t : g) {
      NumComplex m(1.0);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < ex[i]; ++k) m *= roots[t(i)];
      s += m;
    }
    double tol = std::max(10 * s.eps(), 1e-9 * std::max(1.0, s.abs()));
    if (std::abs(s.im()) > tol || std::abs(s.re() - std::round(s.re())) > tol) return false;
  }
  return true;
}

PermGroup parse_group(const std::vector<std::string>& spec, int n) {
  std::vector<Permutation> gens;
  for (const auto& s : spec) {
    try {
      gens.push_back(Permutation::parse(s, n));
    } catch (const Error& e) {
      throw Error(ErrorCode::GaloisSpecInvalid, e.what());
    }
  }
  return generate_subgroup(gens, n);
}

std::pair<Integer, long> squarefree_split(const Integer& disc) {
  Integer m = abs(disc), s = 1;
  for (Integer p = 2; p * p <= m; ++p)
    while (m % (p * p) == 0) {
      m /= p * p;
      s *= p;
    }
  if (!m.fits_slong_p()) throw Error(ErrorCode::InputParseError, "discriminant too large");
  long d = m.get_si();
  return {s, sgn(disc) < 0 ? -d : d};
}

}  // namespace

TorusFixture build_fixture(const IntPoly& f, const std::optional<std::vector<std::string>>& galoisSpec,
                           const std::optional<std::vector<RatMatrix>>& orderBasis) {
  TorusFixture fx;
  fx.algebra = etale_from_poly(f);
  const int n = static_cast<int>(fx.algebra.n);
  if (orderBasis) {
    if (orderBasis->size() != fx.algebra.n)
      throw Error(ErrorCode::SchemaMismatch, "order_basis must have n elements");
    for (const auto& b : *orderBasis)
      if (!fx.algebra.contains(b)) throw Error(ErrorCode::SchemaMismatch, "order_basis element outside the algebra");
    fx.algebra.orderBasis = *orderBasis;
  }
  if (n <= 2) {
    fx.backend = Backend::Quad;
    if (n == 1) {
      fx.quadRoots = {QuadExt(0, Rational(-f[0]))};
      fx.galois = {Permutation::identity(1)};
    } else {
      Integer disc = f[1] * f[1] - 4 * f[0];
      auto [s, d] = squarefree_split(disc);
      fx.d = d;
      Rational half = Rational(-f[1]) / 2;
      fx.quadRoots = {QuadExt(d, half, Rational(s) / 2), QuadExt(d, half, Rational(-s) / 2)};
      fx.galois = d == 1 ? PermGroup{Permutation::identity(2)}
                         : generate_subgroup({Permutation::transposition(2, 1, 2)}, 2);
    }
    fx.quadIdems = lagrange_idempotents(fx.algebra, fx.quadRoots);
    if (galoisSpec) {
      PermGroup g = parse_group(*galoisSpec, n);
      if (g != fx.galois) throw Error(ErrorCode::GaloisSpecInvalid, "supplied group differs from Gal(f)");
    }
    return fx;
  }

  fx.backend = Backend::Numeric;
  fx.numRoots = numeric_roots(f);
  fx.numIdems = lagrange_idempotents(fx.algebra, fx.numRoots);
  if (galoisSpec) {
    fx.galois = parse_group(*galoisSpec, n);
    if (!orbit_sums_integral(fx.galois, fx.numRoots))
      throw Error(ErrorCode::GaloisSpecInvalid, "supplied permutations do not act as automorphisms on the roots");
    return fx;
  }
  if (n != 3) throw Error(ErrorCode::GaloisSpecRequired, "degree >= 4 needs an explicit Galois group");

  std::vector<int> rationalIdx;
  for (int i = 0; i < 3; ++i) {
    const NumComplex& r = fx.numRoots[i];
    if (r.im() != 0.0) continue;
    Integer k(static_cast<long>(std::llround(r.re())));
    Integer v = f[3];
    for (int j = 2; j >= 0; --j) v = v * k + f[j];
    if (v == 0) rationalIdx.push_back(i);
  }
  if (rationalIdx.size() == 3) {
    fx.galois = {Permutation::identity(3)};
  } else if (rationalIdx.size() == 1) {
    std::vector<int> rest;
    for (int i = 0; i < 3; ++i)
      if (i != rationalIdx[0]) rest.push_back(i + 1);
    fx.galois = generate_subgroup({Permutation::transposition(3, rest[0], rest[1])}, 3);
  } else {
    Rational disc = det(trace_gram(fx.algebra.basisMatrices));
    Integer dz = disc.get_num();
    bool square = sgn(dz) > 0 && mpz_perfect_square_p(dz.get_mpz_t());
    fx.galois = square ? generate_subgroup({Permutation::parse("(1 2 3)", 3)}, 3)
                       : generate_subgroup({Permutation::parse("(1 2 3)", 3), Permutation::parse("(1 2)", 3)}, 3);
  }
  if (!orbit_sums_integral(fx.galois, fx.numRoots))
    throw Error(ErrorCode::GaloisSpecInvalid, "detected group fails the orbit-sum check");
  return fx;
}

FieldValue fixture_psi(const TorusFixture& fx, const Permutation& sigma, const RatMatrix& g) {
  FieldValue v;
  v.backend = fx.backend;
  if (fx.backend == Backend::Quad)
    v.q = psi_torus(sigma, to_quad(g, fx.d), fx.quadIdems);
  else
    v.z = psi_torus(sigma, to_num(g), fx.numIdems);
  return v;
}

std::vector<FieldValue> fixture_psi_vector(const TorusFixture& fx, const RatMatrix& g) {
  std::vector<FieldValue> out;
  if (fx.backend == Backend::Quad) {
    auto pv = psi_torus_vector(to_quad(g, fx.d), fx.quadIdems);
    for (auto& x : pv.values) out.push_back(FieldValue{Backend::Quad, x, {}});
  } else {
    auto pv = psi_torus_vector(to_num(g), fx.numIdems);
    for (auto& x : pv.values) out.push_back(FieldValue{Backend::Numeric, {}, x});
  }
  return out;
}

FiberReport fixture_fiber_test(const TorusFixture& fx, const RatMatrix& g) {
  if (fx.backend == Backend::Quad) return identity_fiber_test(to_quad(g, fx.d), fx.quadIdems);
  return identity_fiber_test(to_num(g), fx.numIdems);
}

namespace {

bool values_agree(const FieldValue& a, const FieldValue& b, double tol) {
  if (a.backend == Backend::Quad) return a.q == b.q;
  double diff = std::abs(a.z.value() - b.z.value());
  double scale = std::max({1.0, a.z.abs(), b.z.abs()});
  return diff <= std::max(a.z.eps() + b.z.eps(), tol * scale);
}

}  // namespace

EquivarianceResult galois_equivariance_check(const TorusFixture& fx, const RatMatrix& g,
                                             const Permutation& sigma, const Permutation& tau) {
  if (!contains(fx.galois, tau)) throw Error(ErrorCode::TauNotInGalois, tau.to_string() + " is not in the group");
  EquivarianceResult r;
  Permutation moved = conjugate(tau, sigma);
  r.rhs = fixture_psi(fx, moved, g);
  r.lhs.backend = fx.backend;
  if (fx.backend == Backend::Quad) {
    QuadExt v = psi_torus(sigma, to_quad(g, fx.d), fx.quadIdems);
    r.lhs.q = tau.is_identity() ? v : v.conj();
  } else {
    std::vector<NumMatrix> relabeled;
    for (int k = 0; k < tau.n(); ++k) relabeled.push_back(fx.numIdems[tau(k)]);
    r.lhs.z = psi_torus(sigma, to_num(g), relabeled);
  }
  r.ok = values_agree(r.lhs, r.rhs, kEquivarianceTol);
  return r;
}

std::optional<Rational> reconstruct_rational(double x, double tol, const Integer& bound) {
  long double y = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 200; ++it) {
    long double a = std::floor(y);
    Integer ai(static_cast<double>(a));
    Integer p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > bound) return std::nullopt;
    Rational cand(p2, q2);
    cand.canonicalize();
    if (std::abs(static_cast<long double>(cand.get_d()) - static_cast<long double>(x)) <= tol) return cand;
    long double frac = y - a;
    if (frac == 0) return std::nullopt;
    y = 1 / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

RatMatrix primitive_integer_multiple(const RatMatrix& g) {
  Integer l = 1, c = 0;
  for (const auto& x : g.data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  RatMatrix out = g;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      out(i, j) *= Rational(l);
      mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), out(i, j).get_num_mpz_t());
    }
  if (c != 0)
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) /= Rational(c);
  return out;
}

OrbitProduct galois_orbit_product(const TorusFixture& fx, const Permutation& sigma0, const RatMatrix& g,
                                  const std::optional<Integer>& denomBound) {
  OrbitProduct out;
  out.orbit = conjugacy_class(sigma0, fx.galois);
  if (fx.backend == Backend::Quad) {
    QuadExt acc = QuadExt(fx.d, 1);
    for (const auto& w : out.orbit) acc *= fixture_psi(fx, w, g).q;
    if (!acc.is_rational()) throw Error(ErrorCode::ReconstructionFailed, "orbit product is not rational");
    out.value = acc.a();
    out.raw = NumComplex::from_rational(acc.a());
    return out;
  }
  NumComplex acc(1.0);
  for (const auto& w : out.orbit) acc *= fixture_psi(fx, w, g).z;
  out.raw = acc;
  Integer bound;
  if (denomBound) {
    bound = *denomBound;
  } else {
    Rational disc = det(trace_gram(fx.algebra.basisMatrices));
    Rational dg = det(primitive_integer_multiple(g));
    Integer base = abs(disc.get_num()) * abs(dg.get_num());
    mpz_pow_ui(bound.get_mpz_t(), base.get_mpz_t(), out.orbit.size());
  }
  double tol = 10 * std::max(acc.eps(), NumComplex::kZeroFloor);
  if (std::abs(acc.im()) > tol) throw Error(ErrorCode::ReconstructionFailed, "imaginary part exceeds error bound");
  auto r = reconstruct_rational(acc.re(), tol, bound);
  if (!r) throw Error(ErrorCode::ReconstructionFailed, "no rational within tolerance and denominator bound");
  out.value = *r;
  return out;
}

PropagationReport propagation_report(const TorusFixture& fx, const RatMatrix& g) {
  PropagationReport rep;
  rep.pass = true;
  auto values = fixture_psi_vector(fx, g);
  auto perms = all_permutations(static_cast<int>(fx.n()));
  for (std::size_t k = 0; k < perms.size(); ++k) {
    FieldValue target;
    target.backend = fx.backend;
    if (fx.backend == Backend::Quad)
      target.q = QuadExt(fx.d, perms[k].is_identity() ? 1 : 0);
    else
      target.z = NumComplex(perms[k].is_identity() ? 1.0 : 0.0);
    bool ok = values_agree(values[k], target, kEquivarianceTol);
    rep.entries.push_back({perms[k], values[k], ok});
    rep.pass = rep.pass && ok;
  }
  return rep;
}

PropagationReport zero_propagation(const TorusFixture& fx, const RatMatrix& g, const Permutation& sigma0) {
  const int n = static_cast<int>(fx.n());
  if (!is_2transitive(fx.galois, n))
    throw Error(ErrorCode::PreconditionsFailed, "Galois group is not 2-transitive");
  if (sigma0.fixed_points() != 0) throw Error(ErrorCode::PreconditionsFailed, "sigma0 has fixed points");
  FieldValue v = fixture_psi(fx, sigma0, g);
  FieldValue zero;
  zero.backend = fx.backend;
  zero.q = QuadExt(fx.d, 0);
  if (!values_agree(v, zero, kEquivarianceTol))
    throw Error(ErrorCode::PreconditionsFailed, "Psi_sigma0(g) is not zero");
  return propagation_report(fx, g);
}

}  // namespace torusinv
