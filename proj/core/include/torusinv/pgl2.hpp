#pragma once

#include "torusinv/entropy.hpp"
#include "torusinv/tori.hpp"

#include <vector>

namespace torusinv {

// a x^2 + b xy + c y^2
template <class T>
struct QuadraticForm {
  T a, b, c;

  T disc() const { return T(b * b - 4 * a * c); }
  friend bool operator==(const QuadraticForm& p, const QuadraticForm& q) {
    return p.a == q.a && p.b == q.b && p.c == q.c;
  }
};

using BinaryQuadraticForm = QuadraticForm<Integer>;
using RatForm = QuadraticForm<Rational>;

RatForm to_rat(const BinaryQuadraticForm& q);

template <class T>
T disc_inner_product(const QuadraticForm<T>& q, const QuadraticForm<T>& r) {
  return T(q.b * r.b - 2 * q.a * r.c - 2 * r.a * q.c);
}

// (b, -2a; 2c, -b)
RatMatrix form_to_matrix(const RatForm& q);
RatMatrix form_to_matrix(const BinaryQuadraticForm& q);

// g.q(x, y) = q((x, y) g) / det g
RatForm act(const RatMatrix& g, const RatForm& q);

// -d x^2 + y^2: disc 4d, stabilized (up to det) by the centralizer of [[0,d],[1,0]].
BinaryQuadraticForm torus_form(long d);

// Idempotents of the torus {t : t X = X t}, X = form_to_matrix(q).
std::vector<QuadMatrix> form_idempotents(const BinaryQuadraticForm& q);

struct DiscIdentity {
  Rational lhs;    // <q, δ.q> / disc(q)
  Rational rhs;    // Ψ_{+1}(δ) - Ψ_{-1}(δ)
  Rational scale;  // disc(q): q / sqrt(scale) has discriminant 1
  bool holds = false;
};

DiscIdentity psi_disc_identity(const BinaryQuadraticForm& qT, const RatMatrix& delta);

struct IdealClassRep {
  long d = 0;
  BinaryQuadraticForm form;          // reduced representative
  std::vector<QuadExt> idealBasis;   // |a|, -b/2 + sqrt d
  RatMatrix lambdaMatrix;            // columns: ideal basis in coordinates {1, sqrt d}
};

// Reduced indefinite forms of discriminant 4d.
std::vector<BinaryQuadraticForm> reduced_forms(long d);
BinaryQuadraticForm rho(const BinaryQuadraticForm& q, long d);

// One representative per ideal class of Z[sqrt d]; the principal class first.
std::vector<IdealClassRep> ideal_class_reps(long d);

struct PacketRow {
  long d = 0;
  int i = 0, j = 0;
  Rational psiPlus, psiMinus;
  Rational witness;  // 4d Ψ_{-1}(λ)
  bool sumIsOne = false;
  bool integral = false;
  bool inTorus = false;
  bool floorHolds = true;  // |Ψ_{-1}| >= 1/(4d) off the torus
  double tauNeeded = 0;    // smallest τ with C e^{-4τ} < 1/(4d)
  double tauStar = 0;
};

struct PacketReport {
  long d = 0;
  std::size_t classCount = 0;
  std::vector<PacketRow> rows;
  bool pass() const;
};

// Decay constant for n = 2 sup-norm balls of the given radius.
double pgl2_decay_constant(double radius);

// λ = λ_i λ_j^{-1} for class representatives i, j.
RatMatrix packet_lambda(const IdealClassRep& ri, const IdealClassRep& rj);

PacketReport packet_experiment(long d, const FlowElement& a, double radius, double kappa);

}  // namespace torusinv
