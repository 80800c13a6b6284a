#include "zealot/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zealot/errors.hpp"

namespace zealot {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

// Continued fraction for I_x(a, b) (without the front factor).
double inc_beta_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;

  double last_delta = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= detail::kIncBetaMaxIterations; ++m) {
    const double m2 = 2.0 * m;

    // even step
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    // odd step
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;

    last_delta = std::abs(delta - 1.0);
    if (last_delta < detail::kIncBetaTolerance) return h;
  }
  throw NumericalError("reg_inc_beta: continued fraction did not converge in " +
                           std::to_string(detail::kIncBetaMaxIterations) + " iterations",
                       detail::kIncBetaMaxIterations, last_delta);
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability must lie in [0, 1], got " + std::to_string(value));
  }
}

Probability Probability::clamped(double value) {
  constexpr double kSlack = 1e-12;
  if (value < 0.0 && value >= -kSlack) return Probability(0.0);
  if (value > 1.0 && value <= 1.0 + kSlack) return Probability(1.0);
  return Probability(value);
}

ShapePair::ShapePair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(std::isfinite(alpha) && std::isfinite(beta) && alpha > 0.0 && beta > 0.0)) {
    throw DomainError("shape parameters must be positive and finite, got (" +
                      std::to_string(alpha) + ", " + std::to_string(beta) + ")");
  }
}

double log_gamma(double x) {
  static constexpr std::array<double, 14> kCoefficients = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  static constexpr double kG = 671.0 / 128.0;
  static constexpr double kSqrtTwoPi = 2.5066282746310005;

  require_finite(x, "log_gamma");
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");

  // Exact values for the small integers used constantly by the pmf code.
  if (x == 1.0 || x == 2.0) return 0.0;

  double y = x;
  double tmp = x + kG;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double series = 0.999999999999997092;
  for (double c : kCoefficients) series += c / ++y;
  return tmp + std::log(kSqrtTwoPi * series / x);
}

double log_beta(const ShapePair& shape) {
  const double a = shape.alpha();
  const double b = shape.beta();
  // Fixed summation order keeps log_beta(a, b) == log_beta(b, a) bit for bit.
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return log_gamma(lo) + log_gamma(hi) - log_gamma(a + b);
}

Probability reg_inc_beta(double x, const ShapePair& shape) {
  require_finite(x, "reg_inc_beta");
  if (x < 0.0 || x > 1.0) throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  if (x == 0.0) return Probability(0.0);
  if (x == 1.0) return Probability(1.0);

  const double a = shape.alpha();
  const double b = shape.beta();
  if (a == b && x == 0.5) return Probability(0.5);

  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(shape);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return Probability::clamped(front * inc_beta_fraction(a, b, x) / a);
  }
  return Probability::clamped(1.0 - front * inc_beta_fraction(b, a, 1.0 - x) / b);
}

double beta_pdf(double v, const ShapePair& shape) {
  require_finite(v, "beta_pdf");
  if (!(v > 0.0 && v < 1.0)) throw DomainError("beta_pdf: v must lie in (0, 1)");
  const double a = shape.alpha();
  const double b = shape.beta();
  return std::exp((a - 1.0) * std::log(v) + (b - 1.0) * std::log1p(-v) - log_beta(shape));
}

Probability normal_cdf(double z) {
  require_finite(z, "normal_cdf");
  return Probability::clamped(0.5 * std::erfc(-z / std::numbers::sqrt2));
}

}  // namespace zealot
