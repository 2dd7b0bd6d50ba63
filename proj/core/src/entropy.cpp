#include "torusinv/entropy.hpp"

#include "torusinv/errors.hpp"
#include "torusinv/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace torusinv {

FlowElement::FlowElement(std::vector<double> weights) : logWeights(std::move(weights)) {
  if (logWeights.empty()) return;
  double mean = std::accumulate(logWeights.begin(), logWeights.end(), 0.0) / static_cast<double>(logWeights.size());
  for (auto& w : logWeights) w -= mean;
}

FlowElement FlowElement::power(int k) const {
  std::vector<double> w = logWeights;
  for (auto& x : w) x *= k;
  return FlowElement(std::move(w));
}

FlowElement symmetric_flow(int n) {
  std::vector<double> w;
  for (int i = 0; i < n; ++i) w.push_back((n - 1) / 2.0 - i);
  return FlowElement(std::move(w));
}

double haar_entropy(const FlowElement& a) {
  double s = 0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (i != j) s += std::abs(a.root(i, j));
  return s / 2;
}

EntropyBounds entropy_bounds(const FlowElement& a) {
  EntropyBounds b;
  b.haar = haar_entropy(a);
  b.newBound = a.n() >= 2 ? b.haar / (2.0 * (a.n() - 1)) : 0.0;
  double m = 0;
  bool any = false;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      double r = std::abs(a.root(i, j));
      if (i == j || r == 0) continue;
      m = any ? std::min(m, r) : r;
      any = true;
    }
  b.elmvBound = any ? m / 2 : 0.0;
  return b;
}

namespace {

// (a^{-s} g a^{s})_{ij} = g_ij exp(s (lw_j - lw_i))
bool conjugate_in_ball(const Eigen::MatrixXd& g, const FlowElement& a, int s, double radius) {
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = g(i, j) * std::exp(s * (a.logWeights[j] - a.logWeights[i]));
      if (std::abs(v - (i == j ? 1.0 : 0.0)) > radius) return false;
    }
  return true;
}

}  // namespace

bool bowen_membership(const Eigen::MatrixXd& g, const FlowElement& a, const BowenSpec& spec) {
  const int n = a.n();
  double d = g.determinant();
  if (d == 0) throw Error(ErrorCode::SingularMatrix, "g is singular");
  double scale = std::pow(std::abs(d), -1.0 / n);
  for (double sign : {1.0, -1.0}) {
    Eigen::MatrixXd h = g * (scale * sign);
    if (conjugate_in_ball(h, a, spec.s, spec.radius) && conjugate_in_ball(h, a, spec.t, spec.radius)) return true;
  }
  return false;
}

double psi_decay_bound(const Permutation& sigma, const FlowElement& a, const BowenSpec& spec) {
  double p = 1;
  for (const auto& [j, i] : root_set(sigma)) {
    double r = a.logWeights[j - 1] - a.logWeights[i - 1];
    p *= std::min(std::exp(spec.s * r), std::exp(spec.t * r));
  }
  return p;
}

double separation_threshold(double D, double Dram, const FlowElement& a, double kappa) {
  double h = haar_entropy(a);
  if (h <= 0) throw Error(ErrorCode::ZeroEntropy, "h_Haar(a) = 0");
  const int n = a.n();
  return (n - 1) * (std::log(D) + (n / 2.0) * std::log(Dram) + kappa) / (2 * h);
}

std::int64_t rank_obstruction(std::int64_t R) { return (R + 2) * (R + 1) * R - 1; }

std::vector<double> psi0_real(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  double d = g.determinant();
  std::vector<double> out;
  for (const auto& s : all_permutations(n)) {
    double p = s.sign();
    for (int i = 0; i < n; ++i) p *= g(s(i), i);
    out.push_back(p / d);
  }
  return out;
}

DecayReport decay_experiment(const FlowElement& a, double radius, int tauMax, int samples, std::uint64_t seed) {
  const int n = a.n();
  auto perms = all_permutations(n);
  std::vector<std::vector<double>> base(samples, std::vector<double>(n * n));
  for (int k = 0; k < samples; ++k) {
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& x : base[k]) x = u(rng);
  }
  DecayReport rep;
  for (int tau = 0; tau <= tauMax; ++tau) {
    BowenSpec spec{radius, -tau, tau};
    std::vector<double> bounds;
    for (const auto& s : perms) bounds.push_back(psi_decay_bound(s, a, spec));
    std::vector<double> sup(samples, 0.0), supId(samples, 0.0);
    std::vector<char> member(samples, 0);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t k) {
      Eigen::MatrixXd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double u = base[k][i * n + j];
          g(i, j) = i == j ? 1.0 + radius * u
                           : radius * u * std::exp(-tau * std::abs(a.logWeights[i] - a.logWeights[j]));
        }
      member[k] = bowen_membership(g, a, spec) ? 1 : 0;
      auto psi = psi0_real(g);
      for (std::size_t p = 0; p < perms.size(); ++p) {
        if (perms[p].is_identity())
          supId[k] = std::abs(psi[p]);
        else
          sup[k] = std::max(sup[k], std::abs(psi[p]) / bounds[p]);
      }
    });
    DecayRow row;
    row.tau = tau;
    row.supRatio = *std::max_element(sup.begin(), sup.end());
    row.supIdRatio = *std::max_element(supId.begin(), supId.end());
    row.inBall = static_cast<int>(std::count(member.begin(), member.end(), 1));
    rep.constant = std::max(rep.constant, row.supRatio);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace torusinv
