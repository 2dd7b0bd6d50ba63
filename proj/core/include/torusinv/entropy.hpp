#pragma once

#include "torusinv/perms.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace torusinv {

// log|a_i| at the real place, canonicalized to sum zero.
struct FlowElement {
  std::vector<double> logWeights;

  explicit FlowElement(std::vector<double> weights);
  int n() const { return static_cast<int>(logWeights.size()); }
  double root(int i, int j) const { return logWeights[i] - logWeights[j]; }  // 0-based
  FlowElement power(int k) const;
};

// Weights ((n-1)/2, (n-3)/2, ..., -(n-1)/2).
FlowElement symmetric_flow(int n);

struct BowenSpec {
  double radius = 0.1;
  int s = 0;
  int t = 1;
};

double haar_entropy(const FlowElement& a);

struct EntropyBounds {
  double haar = 0;
  double newBound = 0;
  double elmvBound = 0;
};

EntropyBounds entropy_bounds(const FlowElement& a);

bool bowen_membership(const Eigen::MatrixXd& g, const FlowElement& a, const BowenSpec& spec);

double psi_decay_bound(const Permutation& sigma, const FlowElement& a, const BowenSpec& spec);

double separation_threshold(double D, double Dram, const FlowElement& a, double kappa);

std::int64_t rank_obstruction(std::int64_t R);

struct DecayRow {
  int tau = 0;
  double supRatio = 0;    // over σ ≠ id
  double supIdRatio = 0;  // |Ψ_id|, bound 1
  int inBall = 0;         // samples accepted by bowen_membership
};

struct DecayReport {
  std::vector<DecayRow> rows;
  double constant = 0;  // sup over the sweep
};

// Samples g in B^{(-τ,τ)} for τ = 0..tauMax and records sup |Ψ⁰_σ(g)| / bound(σ).
// Each sample index reuses the same base variates across τ.
DecayReport decay_experiment(const FlowElement& a, double radius, int tauMax, int samples, std::uint64_t seed);

// Ψ⁰ over all σ for a real matrix, indexed by perm_index.
std::vector<double> psi0_real(const Eigen::MatrixXd& g);

}  // namespace torusinv
