#pragma once

// Exact stationary law of the number of correct free voters on the complete
// graph, majority accuracy at finite and infinite population, the normal
// regime, and a birth-death transition-matrix oracle built from the dynamics.

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "zealot/special_fn.hpp"

namespace zealot {

/// Number of free voters; at least one.
class PopulationSize {
 public:
  explicit PopulationSize(std::int64_t n);
  std::int64_t value() const noexcept { return n_; }
  operator std::int64_t() const noexcept { return n_; }

 private:
  std::int64_t n_;
};

/// Stationary law of X, stored as log-probabilities indexed by k = 0..n.
struct BetaBinomialPmf {
  std::int64_t n;
  ShapePair shape;
  Eigen::VectorXd log_probs;

  Eigen::VectorXd probabilities() const { return log_probs.array().exp().matrix(); }
  double probability(std::int64_t k) const;
};

/// One row of an accuracy table. `n` is empty for the n -> infinity limit.
struct AccuracyResult {
  std::optional<std::int64_t> n;
  Probability networked;
  Probability independent;
  Probability signal_p;
};

/// One-step kernel of the voter dynamics on the complete graph, projected
/// onto X. Dense (n+1) x (n+1) row-stochastic, nonzero only on the
/// tridiagonal band.
struct TransitionMatrix {
  std::int64_t n;
  std::int64_t alpha_count;
  std::int64_t beta_count;
  Eigen::MatrixXd rows;

  double up(std::int64_t k) const { return k < n ? rows(k, k + 1) : 0.0; }
  double down(std::int64_t k) const { return k > 0 ? rows(k, k - 1) : 0.0; }
};

/// Majority threshold floor(n/2) + 1: even-n ties do not count as correct.
constexpr std::int64_t majority_threshold(std::int64_t n) noexcept { return n / 2 + 1; }

/// P(X = k) for k = 0..n, in the gamma-function form that extends to real
/// shapes. Computed term by term in log-space and normalized by log-sum-exp.
BetaBinomialPmf beta_binomial_pmf(PopulationSize n, const ShapePair& shape);

/// P(X >= floor(n/2) + 1) under the networked stationary law.
Probability majority_accuracy_networked(PopulationSize n, const ShapePair& shape);

/// Binomial upper tail for n independent voters each correct with chance p.
Probability majority_accuracy_independent(PopulationSize n, Probability p);

/// Networked and independent accuracy side by side, with p = alpha/(alpha+beta).
AccuracyResult accuracy_row(PopulationSize n, const ShapePair& shape);

/// The n -> infinity row: networked is the Beta limit, independent is the
/// Condorcet limit (1 if p > 1/2, 1/2 if p = 1/2, 0 otherwise).
AccuracyResult accuracy_limit_row(const ShapePair& shape);

/// lim_{n->inf} P_n = P(V >= 1/2) = 1 - I_{1/2}(alpha, beta).
Probability asymptotic_accuracy(const ShapePair& shape);

struct NormalApprox {
  double mean;
  double variance;
  Probability accuracy;
};

/// Normal approximation of Beta(alpha, beta) with matched mean and variance,
/// and the resulting 1 - Phi((1/2 - mu) / sigma).
NormalApprox normal_approx(const ShapePair& shape);
Probability normal_approx_accuracy(const ShapePair& shape);

/// Builds the projected kernel for n free voters plus alpha_count correct and
/// beta_count incorrect zealots. A voter never copies itself, so each voter
/// sees N - 1 = n + alpha + beta - 1 neighbours. Memory is O(n^2).
TransitionMatrix transition_matrix(PopulationSize n, std::int64_t alpha_count,
                                   std::int64_t beta_count);

/// Stationary law of a birth-death kernel by detailed balance,
/// pi_{k+1} = pi_k u_k / d_{k+1}. Throws StructuralError on a zero down-rate
/// and NumericalError if ||pi M - pi||_inf exceeds 1e-12.
BetaBinomialPmf stationary_from_matrix(const TransitionMatrix& m);

}  // namespace zealot
