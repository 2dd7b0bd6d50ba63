#include "torusinv/pgl2.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace torusinv {

RatForm to_rat(const BinaryQuadraticForm& q) { return RatForm{Rational(q.a), Rational(q.b), Rational(q.c)}; }

RatMatrix form_to_matrix(const RatForm& q) {
  RatMatrix m(2, 2, Rational(0));
  m(0, 0) = q.b;
  m(0, 1) = -2 * q.a;
  m(1, 0) = 2 * q.c;
  m(1, 1) = -q.b;
  return m;
}

RatMatrix form_to_matrix(const BinaryQuadraticForm& q) { return form_to_matrix(to_rat(q)); }

RatForm act(const RatMatrix& g, const RatForm& q) {
  const Rational &p = g(0, 0), &r = g(0, 1), &s = g(1, 0), &t = g(1, 1);
  Rational dg = p * t - r * s;
  if (is_zero(dg)) throw Error(ErrorCode::SingularMatrix, "det g = 0");
  RatForm out;
  out.a = (q.a * p * p + q.b * p * r + q.c * r * r) / dg;
  out.b = (2 * q.a * p * s + q.b * (p * t + s * r) + 2 * q.c * r * t) / dg;
  out.c = (q.a * s * s + q.b * s * t + q.c * t * t) / dg;
  return out;
}

BinaryQuadraticForm torus_form(long d) { return BinaryQuadraticForm{Integer(-d), Integer(0), Integer(1)}; }

namespace {

std::pair<Integer, long> split_square(const Integer& disc) {
  Integer m = abs(disc), s = 1;
  for (Integer p = 2; p * p <= m; ++p)
    while (m % (p * p) == 0) {
      m /= p * p;
      s *= p;
    }
  long d = m.get_si();
  return {s, sgn(disc) < 0 ? -d : d};
}

}  // namespace

std::vector<QuadMatrix> form_idempotents(const BinaryQuadraticForm& q) {
  Integer disc = q.disc();
  if (disc == 0) throw Error(ErrorCode::DegenerateForm, "form has discriminant 0");
  auto [s, d] = split_square(disc);
  QuadMatrix x = to_quad(form_to_matrix(q), d);
  std::vector<QuadExt> roots{QuadExt(d, 0, Rational(s)), QuadExt(d, 0, Rational(-s))};
  auto idems = lagrange_idempotents(x, roots);
  check_idempotents(idems);
  return idems;
}

DiscIdentity psi_disc_identity(const BinaryQuadraticForm& qT, const RatMatrix& delta) {
  auto idems = form_idempotents(qT);
  DiscIdentity r;
  RatForm q = to_rat(qT);
  r.scale = q.disc();
  r.lhs = disc_inner_product(q, act(delta, q)) / r.scale;
  long d = idems[0](0, 0).d();
  QuadMatrix g = to_quad(delta, d);
  QuadExt plus = psi_torus(Permutation::identity(2), g, idems);
  QuadExt minus = psi_torus(Permutation::transposition(2, 1, 2), g, idems);
  QuadExt diff = plus - minus;
  r.holds = diff.is_rational() && diff.a() == r.lhs;
  r.rhs = diff.a();
  return r;
}

namespace {

Integer isqrt(const Integer& x) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool is_reduced(const Integer& a, const Integer& b, const Integer& delta) {
  Integer aa = 2 * abs(a);
  if (!(b > 0 && b * b < delta)) return false;
  if (!(delta < (aa + b) * (aa + b))) return false;
  Integer lhs = aa - b;
  return lhs < 0 || lhs * lhs < delta;
}

}  // namespace

std::vector<BinaryQuadraticForm> reduced_forms(long d) {
  Integer delta = Integer(4) * d;
  Integer s = isqrt(delta);
  std::vector<BinaryQuadraticForm> out;
  for (Integer b = 2; b <= s; b += 2) {
    Integer prod = (b * b - delta) / 4;  // a c, negative
    Integer m = abs(prod);
    for (Integer a = 1; a <= m; ++a) {
      if (m % a != 0) continue;
      for (int sign : {1, -1}) {
        Integer as = a * sign;
        if (!is_reduced(as, b, delta)) continue;
        out.push_back({as, b, prod / as});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

BinaryQuadraticForm rho(const BinaryQuadraticForm& q, long d) {
  Integer delta = Integer(4) * d;
  Integer s = isqrt(delta);
  Integer m = 2 * abs(q.c);
  // largest b' <= s with b' ≡ -b (mod 2|c|)
  Integer r = (-q.b) % m;
  if (r < 0) r += m;
  Integer bp = s - ((s - r) % m + m) % m;
  return BinaryQuadraticForm{q.c, bp, (bp * bp - delta) / (4 * q.c)};
}

std::vector<IdealClassRep> ideal_class_reps(long d) {
  if (d <= 1 || !is_squarefree(d)) throw Error(ErrorCode::DNotSquarefree, "d must be squarefree and > 1");
  long r4 = d % 4;
  if (r4 != 2 && r4 != 3) throw Error(ErrorCode::DNotSquarefree, "d must be 2 or 3 mod 4");
  auto forms = reduced_forms(d);
  auto key = [](const BinaryQuadraticForm& f) { return std::make_tuple(abs(f.a), f.a < 0, f.b); };
  std::map<std::tuple<Integer, Integer, Integer>, int> index;
  for (std::size_t k = 0; k < forms.size(); ++k) index[{forms[k].a, forms[k].b, forms[k].c}] = static_cast<int>(k);
  std::vector<int> cls(forms.size(), -1);
  int classes = 0;
  for (std::size_t k = 0; k < forms.size(); ++k) {
    if (cls[k] >= 0) continue;
    std::vector<BinaryQuadraticForm> stack{forms[k]};
    while (!stack.empty()) {
      BinaryQuadraticForm f = stack.back();
      stack.pop_back();
      int id = index.at({f.a, f.b, f.c});
      if (cls[id] >= 0) continue;
      cls[id] = classes;
      stack.push_back(rho(f, d));
      stack.push_back(BinaryQuadraticForm{-f.a, f.b, -f.c});
    }
    ++classes;
  }
  std::vector<IdealClassRep> reps;
  for (int c = 0; c < classes; ++c) {
    const BinaryQuadraticForm* best = nullptr;
    for (std::size_t k = 0; k < forms.size(); ++k)
      if (cls[k] == c && (!best || key(forms[k]) < key(*best))) best = &forms[k];
    IdealClassRep rep;
    rep.d = d;
    rep.form = *best;
    Rational a = Rational(abs(best->a)), shift = Rational(-best->b) / 2;
    rep.idealBasis = {QuadExt(d, a, 0), QuadExt(d, shift, 1)};
    rep.lambdaMatrix = RatMatrix(2, 2, Rational(0));
    rep.lambdaMatrix(0, 0) = a;
    rep.lambdaMatrix(0, 1) = shift;
    rep.lambdaMatrix(1, 1) = 1;
    reps.push_back(std::move(rep));
  }
  std::sort(reps.begin(), reps.end(), [&](const auto& x, const auto& y) { return key(x.form) < key(y.form); });
  return reps;
}

double pgl2_decay_constant(double radius) {
  return radius * radius / ((1 - radius) * (1 - radius) - radius * radius);
}

RatMatrix packet_lambda(const IdealClassRep& ri, const IdealClassRep& rj) {
  return ri.lambdaMatrix * inverse(rj.lambdaMatrix);
}

bool PacketReport::pass() const {
  for (const auto& r : rows)
    if (!r.sumIsOne || !r.integral || !r.floorHolds) return false;
  return true;
}

PacketReport packet_experiment(long d, const FlowElement& a, double radius, double kappa) {
  auto reps = ideal_class_reps(d);
  TorusFixture fx = build_fixture(IntPoly{Integer(-d), Integer(0), Integer(1)});
  PacketReport rep;
  rep.d = d;
  rep.classCount = reps.size();
  const Integer D = 4 * Integer(d);
  const double C = pgl2_decay_constant(radius);
  const double tauStar = separation_threshold(static_cast<double>(4 * d), 1.0, a, kappa);
  const Permutation id = Permutation::identity(2), flip = Permutation::transposition(2, 1, 2);
  const RatMatrix& m = fx.algebra.xMatrix;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) {
      RatMatrix lambda = packet_lambda(reps[i], reps[j]);
      QuadMatrix g = to_quad(lambda, fx.d);
      QuadExt plus = psi_torus(id, g, fx.quadIdems);
      QuadExt minus = psi_torus(flip, g, fx.quadIdems);
      PacketRow row;
      row.d = d;
      row.i = static_cast<int>(i);
      row.j = static_cast<int>(j);
      row.sumIsOne = plus + minus == QuadExt(fx.d, 1);
      row.psiPlus = plus.a();
      row.psiMinus = minus.a();
      row.witness = minus.a() * Rational(D);
      row.integral = minus.is_rational() && plus.is_rational() && is_integer(row.witness);
      row.inTorus = lambda * m == m * lambda;
      if (!row.inTorus) row.floorHolds = abs(row.psiMinus) >= Rational(1) / Rational(D);
      row.tauNeeded = std::max(0.0, std::log(4.0 * d * C) / 4.0);
      row.tauStar = tauStar;
      rep.rows.push_back(std::move(row));
    }
  return rep;
}

}  // namespace torusinv
