#pragma once

// Special functions behind every analytic formula in the library: log-gamma,
// log-beta, the Beta density and its cdf (the regularized incomplete beta
// function), and the standard normal cdf. All functions are pure.

#include <compare>

namespace zealot {

/// A real number in [0, 1]. Construction rejects anything else.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  /// Clamps tiny rounding excursions (|excess| <= 1e-12) back into [0, 1].
  static Probability clamped(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

/// Positive, finite shape parameters (alpha, beta) of a Beta law; equivalently
/// the external-influence strengths of correct and incorrect zealots.
class ShapePair {
 public:
  ShapePair(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// The pair with the two roles exchanged.
  ShapePair swapped() const noexcept { return ShapePair(beta_, alpha_, Unchecked{}); }

  /// alpha / (alpha + beta): the chance an isolated voter copying only
  /// zealots picks the correct alternative.
  double signal_p() const noexcept { return alpha_ / (alpha_ + beta_); }

  friend bool operator==(const ShapePair&, const ShapePair&) = default;

 private:
  struct Unchecked {};
  ShapePair(double alpha, double beta, Unchecked) noexcept : alpha_(alpha), beta_(beta) {}

  double alpha_;
  double beta_;
};

/// ln Gamma(x) for x > 0.
///
/// Lanczos approximation with g = 671/128 and 14 coefficients (the
/// Numerical Recipes 3rd edition set); relative error stays below 1e-13 on
/// (0, 1e6) except at the zeros x = 1 and x = 2, where the error is absolute.
double log_gamma(double x);

/// ln B(alpha, beta) = ln Gamma(alpha) + ln Gamma(beta) - ln Gamma(alpha + beta).
double log_beta(const ShapePair& shape);

/// I_x(alpha, beta), the Beta(alpha, beta) cdf at x.
///
/// Modified Lentz evaluation of the classical continued fraction. For
/// x > (alpha + 1) / (alpha + beta + 2) the reflection I_x(a, b) = 1 - I_{1-x}(b, a)
/// is used so the fraction always converges quickly. Tolerance 1e-14, at most
/// 500 iterations; exceeding the cap throws NumericalError. The cap is
/// reached only for shapes beyond ~1e5 evaluated close to their mean.
Probability reg_inc_beta(double x, const ShapePair& shape);

/// Beta(alpha, beta) density on the open interval (0, 1), evaluated in
/// log-space and exponentiated last.
double beta_pdf(double v, const ShapePair& shape);

/// Standard normal cdf.
Probability normal_cdf(double z);

namespace detail {
inline constexpr int kIncBetaMaxIterations = 500;
inline constexpr double kIncBetaTolerance = 1e-14;
}  // namespace detail

}  // namespace zealot
