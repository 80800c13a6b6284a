#include "zealot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zealot/errors.hpp"
#include "zealot/quadrature.hpp"
#include "zealot/stationary.hpp"

namespace zealot {

PropositionReport check_proposition(const ShapePair& shape) {
  const Probability lhs = asymptotic_accuracy(shape);
  const Probability rhs(shape.signal_p());
  const double margin = lhs.value() - rhs.value();
  Regime regime = Regime::boundary;
  if (shape.alpha() > shape.beta()) regime = Regime::favours_correct;
  if (shape.alpha() < shape.beta()) regime = Regime::favours_incorrect;
  return PropositionReport{shape, lhs, rhs, margin, margin > 0.0, regime};
}

std::string_view to_string(IdentityStep step) {
  switch (step) {
    case IdentityStep::eq24: return "eq24";
    case IdentityStep::eq25: return "eq25";
    case IdentityStep::eq26: return "eq26";
    case IdentityStep::eq27: return "eq27";
  }
  return "unknown";
}

IdentityCheck check_integral_identities(const ShapePair& shape, double abs_tolerance) {
  const double a = shape.alpha();
  const double b = shape.beta();
  if (a < b) throw DomainError("check_integral_identities: requires alpha >= beta");
  if (!(abs_tolerance > 0.0)) throw DomainError("check_integral_identities: tolerance must be positive");

  // All integrals are bounded by a small multiple of B(a, b); tighten the
  // tolerance accordingly when B is tiny.
  const double tol = abs_tolerance * std::min(1.0, std::exp(log_beta(shape)));

  auto kernel = [](double t, double p, double q) {
    return std::pow(t, p) * std::pow(1.0 - t, q);
  };
  auto full_lo = [&](double t) { return kernel(t, a - 1.0, b - 1.0); };  // t^(a-1)(1-t)^(b-1)
  auto shifted = [&](double t) { return kernel(t, a - 1.0, b); };         // t^(a-1)(1-t)^b
  auto raised = [&](double t) { return kernel(t, a, b - 1.0); };          // t^a(1-t)^(b-1)
  auto mirrored = [&](double s) { return std::pow(1.0 - s, a - 1.0) * std::pow(s, b); };

  const auto lower_full = integrate(full_lo, 0.0, 0.5, tol);
  const auto whole_shifted = integrate(shifted, 0.0, 1.0, tol);
  const auto lower_shifted = integrate(shifted, 0.0, 0.5, tol);
  const auto upper_shifted = integrate(shifted, 0.5, 1.0, tol);
  const auto lower_raised = integrate(raised, 0.0, 0.5, tol);
  const auto lower_mirrored = integrate(mirrored, 0.0, 0.5, tol);

  auto report = [&](IdentityStep step, double lhs, double rhs, double err) {
    return IdentityReport{shape, step, lhs, rhs, err, rhs - lhs > err};
  };

  IdentityCheck out;
  out.steps.push_back(report(IdentityStep::eq24, lower_full.value, whole_shifted.value,
                             lower_full.abs_error + whole_shifted.abs_error));
  out.steps.push_back(report(IdentityStep::eq25, lower_full.value - lower_shifted.value,
                             upper_shifted.value,
                             lower_full.abs_error + lower_shifted.abs_error +
                                 upper_shifted.abs_error));
  out.steps.push_back(report(IdentityStep::eq26, lower_raised.value, upper_shifted.value,
                             lower_raised.abs_error + upper_shifted.abs_error));
  out.steps.push_back(report(IdentityStep::eq27, lower_raised.value, lower_mirrored.value,
                             lower_raised.abs_error + lower_mirrored.abs_error));

  constexpr int kGridPoints = 99;
  double worst = 0.0;
  for (int i = 1; i <= kGridPoints; ++i) {
    const double t = static_cast<double>(i) / (kGridPoints + 1);
    const double difference = full_lo(t) - shifted(t);
    const double expected = raised(t);
    worst = std::max(worst, std::abs(difference - expected) / std::abs(expected));
  }
  out.pointwise_residual = worst;
  out.pointwise_ok = worst < 1e-10;
  return out;
}

double inc_beta_half_by_quadrature(const ShapePair& shape, double abs_tolerance) {
  const double a = shape.alpha();
  const double b = shape.beta();
  const double log_b = log_beta(shape);
  auto density = [&](double t) {
    return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - log_b);
  };
  return integrate(density, 0.0, 0.5, abs_tolerance).value;
}

std::vector<ConvergenceRow> convergence_sweep(const ShapePair& shape,
                                              std::span<const std::int64_t> n_list) {
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw DomainError("convergence_sweep: every n must be at least 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw DomainError("convergence_sweep: n values must be strictly ascending");
    }
  }
  const Probability limit = asymptotic_accuracy(shape);
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    const Probability finite = majority_accuracy_networked(PopulationSize(n), shape);
    rows.push_back(ConvergenceRow{n, finite, limit, std::abs(finite.value() - limit.value())});
  }
  return rows;
}

std::vector<double> GridSpec::values() const {
  if (!(step > 0.0) || !(min > 0.0) || !(max <= 50.0) || !(min <= max)) {
    throw DomainError("grid range must satisfy 0 < min <= max <= 50 with a positive step");
  }
  std::vector<double> out;
  const double slack = step * 1e-3;
  for (std::int64_t i = 0;; ++i) {
    const double v = min + static_cast<double>(i) * step;
    if (v > max + slack) break;
    out.push_back(std::min(v, max));
  }
  return out;
}

GridScanSummary proposition_grid_scan(const GridSpec& alpha_range, const GridSpec& beta_range) {
  const auto alphas = alpha_range.values();
  const auto betas = beta_range.values();
  GridScanSummary summary;
  for (double a : alphas) {
    for (double b : betas) {
      if (!(a > b)) continue;
      const auto report = check_proposition(ShapePair(a, b));
      ++summary.checked;
      if (report.holds) {
        ++summary.holding;
      } else {
        summary.violations.push_back(report);
      }
      if (!summary.worst || report.margin < summary.worst->margin) summary.worst = report;
      summary.rows.push_back(report);
    }
  }
  return summary;
}

}  // namespace zealot
