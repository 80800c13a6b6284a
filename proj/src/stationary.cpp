#include "zealot/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "zealot/errors.hpp"

namespace zealot {

namespace {

// Shifts a vector of log-weights so that their exponentials sum to one.
void normalize_log_weights(Eigen::VectorXd& log_w) {
  const double peak = log_w.maxCoeff();
  const double total = (log_w.array() - peak).exp().sum();
  log_w.array() -= peak + std::log(total);
}

// Sum of positive terms accumulated from the smallest upward.
double ascending_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

double log_choose(std::int64_t n, std::int64_t k) {
  return log_gamma(static_cast<double>(n) + 1.0) - log_gamma(static_cast<double>(k) + 1.0) -
         log_gamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

PopulationSize::PopulationSize(std::int64_t n) : n_(n) {
  if (n < 1) throw DomainError("population size must be at least 1, got " + std::to_string(n));
}

double BetaBinomialPmf::probability(std::int64_t k) const {
  if (k < 0 || k > n) return 0.0;
  return std::exp(log_probs(k));
}

BetaBinomialPmf beta_binomial_pmf(PopulationSize n_free, const ShapePair& shape) {
  const std::int64_t n = n_free;
  const double a = shape.alpha();
  const double b = shape.beta();
  const double nd = static_cast<double>(n);

  const double log_norm = log_gamma(nd + 1.0) + log_gamma(a + b) - log_gamma(a) - log_gamma(b) -
                          log_gamma(nd + a + b);

  Eigen::VectorXd log_probs(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    log_probs(k) = log_gamma(a + kd) - log_gamma(kd + 1.0) + log_gamma(nd + b - kd) -
                   log_gamma(nd - kd + 1.0) + log_norm;
  }
  // The analytic normalizer is exact; this only removes accumulated lgamma
  // rounding, which reaches ~1e-10 relative at n ~ 1e5.
  normalize_log_weights(log_probs);
  return BetaBinomialPmf{n, shape, std::move(log_probs)};
}

Probability majority_accuracy_networked(PopulationSize n_free, const ShapePair& shape) {
  const auto pmf = beta_binomial_pmf(n_free, shape);
  const std::int64_t n = n_free;
  std::vector<double> tail;
  tail.reserve(static_cast<std::size_t>(n - majority_threshold(n) + 1));
  for (std::int64_t k = majority_threshold(n); k <= n; ++k) tail.push_back(pmf.probability(k));
  return Probability::clamped(ascending_sum(std::move(tail)));
}

Probability majority_accuracy_independent(PopulationSize n_free, Probability p) {
  const std::int64_t n = n_free;
  if (p == 0.0) return Probability(0.0);
  if (p == 1.0) return Probability(1.0);

  const double log_p = std::log(p.value());
  const double log_q = std::log1p(-p.value());
  auto term = [&](std::int64_t k) {
    return std::exp(log_choose(n, k) + static_cast<double>(k) * log_p +
                    static_cast<double>(n - k) * log_q);
  };

  // Sum whichever tail is the small one and complement if needed, so that
  // accuracies close to 1 keep their relative precision in 1 - P.
  const std::int64_t threshold = majority_threshold(n);
  std::vector<double> terms;
  if (p.value() > 0.5) {
    for (std::int64_t k = 0; k < threshold; ++k) terms.push_back(term(k));
    return Probability::clamped(1.0 - ascending_sum(std::move(terms)));
  }
  for (std::int64_t k = threshold; k <= n; ++k) terms.push_back(term(k));
  return Probability::clamped(ascending_sum(std::move(terms)));
}

AccuracyResult accuracy_row(PopulationSize n, const ShapePair& shape) {
  const Probability p(shape.signal_p());
  return AccuracyResult{n.value(), majority_accuracy_networked(n, shape),
                        majority_accuracy_independent(n, p), p};
}

AccuracyResult accuracy_limit_row(const ShapePair& shape) {
  const Probability p(shape.signal_p());
  const double condorcet = p.value() > 0.5 ? 1.0 : (p.value() == 0.5 ? 0.5 : 0.0);
  return AccuracyResult{std::nullopt, asymptotic_accuracy(shape), Probability(condorcet), p};
}

Probability asymptotic_accuracy(const ShapePair& shape) {
  return Probability::clamped(1.0 - reg_inc_beta(0.5, shape).value());
}

NormalApprox normal_approx(const ShapePair& shape) {
  const double a = shape.alpha();
  const double b = shape.beta();
  const double s = a + b;
  const double mean = a / s;
  const double variance = a * b / (s * s * (s + 1.0));
  const double z = (0.5 - mean) / std::sqrt(variance);
  return NormalApprox{mean, variance, Probability::clamped(1.0 - normal_cdf(z).value())};
}

Probability normal_approx_accuracy(const ShapePair& shape) { return normal_approx(shape).accuracy; }

TransitionMatrix transition_matrix(PopulationSize n_free, std::int64_t alpha_count,
                                   std::int64_t beta_count) {
  if (alpha_count < 1 || beta_count < 1) {
    throw DomainError("transition_matrix: both zealot counts must be at least 1");
  }
  const std::int64_t n = n_free;
  const double nd = static_cast<double>(n);
  const double neighbours = static_cast<double>(n + alpha_count + beta_count - 1);

  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    // A free voter in the minority state is picked, then copies a neighbour
    // in the other state.
    const double up = ((nd - kd) / nd) * ((static_cast<double>(alpha_count) + kd) / neighbours);
    const double down =
        (kd / nd) * ((static_cast<double>(beta_count) + nd - kd) / neighbours);
    if (k < n) rows(k, k + 1) = up;
    if (k > 0) rows(k, k - 1) = down;
    rows(k, k) = 1.0 - up - down;
  }
  return TransitionMatrix{n, alpha_count, beta_count, std::move(rows)};
}

BetaBinomialPmf stationary_from_matrix(const TransitionMatrix& m) {
  const std::int64_t n = m.n;
  Eigen::VectorXd log_pi(n + 1);
  log_pi(0) = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double up = m.up(k);
    const double down = m.down(k + 1);
    if (!(down > 0.0) || !(up > 0.0)) {
      throw StructuralError("stationary_from_matrix: zero transition rate between states " +
                            std::to_string(k) + " and " + std::to_string(k + 1));
    }
    log_pi(k + 1) = log_pi(k) + std::log(up) - std::log(down);
  }
  normalize_log_weights(log_pi);

  const Eigen::RowVectorXd pi = log_pi.array().exp().matrix().transpose();
  const double residual = (pi * m.rows - pi).lpNorm<Eigen::Infinity>();
  if (!(residual < 1e-12)) {
    throw NumericalError("stationary_from_matrix: residual " + std::to_string(residual) +
                             " exceeds 1e-12",
                         0, residual);
  }
  return BetaBinomialPmf{n, ShapePair(static_cast<double>(m.alpha_count),
                                      static_cast<double>(m.beta_count)),
                         std::move(log_pi)};
}

}  // namespace zealot
