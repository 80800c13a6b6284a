#pragma once

// Numerical checks that the infinite-population majority beats an individual
// voter (1 - I_{1/2}(a, b) > a / (a + b) for a > b), that each integral
// rearrangement behind that bound holds, and that finite-n accuracy
// approaches its Beta limit.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "zealot/special_fn.hpp"

namespace zealot {

enum class Regime { favours_correct, boundary, favours_incorrect };

struct PropositionReport {
  ShapePair shape;
  Probability lhs;  // 1 - I_{1/2}(alpha, beta)
  Probability rhs;  // alpha / (alpha + beta)
  double margin;    // lhs - rhs
  bool holds;       // margin > 0
  Regime regime;
};

/// Evaluates both sides for any shape. At alpha == beta the margin is exactly
/// zero and `holds` is false; for alpha < beta the margin is reported with its
/// (negative) sign rather than rejected.
PropositionReport check_proposition(const ShapePair& shape);

enum class IdentityStep { eq24, eq25, eq26, eq27 };
std::string_view to_string(IdentityStep step);

/// One rearranged form of the bound as a comparison of two integrals.
struct IdentityReport {
  ShapePair shape;
  IdentityStep step;
  double lhs_integral;
  double rhs_integral;
  double quadrature_error;  // combined error estimate of both sides
  bool satisfied;           // rhs - lhs exceeds quadrature_error
};

struct IdentityCheck {
  std::vector<IdentityReport> steps;  // eq24, eq25, eq26, eq27 in order
  // max relative residual of t^(a-1)(1-t)^(b-1) - t^(a-1)(1-t)^b = t^a(1-t)^(b-1)
  double pointwise_residual;
  bool pointwise_ok;
};

/// Evaluates the four inequalities of the integral argument by adaptive
/// quadrature, plus the integrand identity on a uniform interior grid.
/// Requires alpha >= beta; at equality every comparison degenerates to
/// equal integrals and no step is satisfied.
IdentityCheck check_integral_identities(const ShapePair& shape, double abs_tolerance = 1e-10);

/// I_{1/2}(alpha, beta) by quadrature of the Beta density, independent of the
/// continued fraction.
double inc_beta_half_by_quadrature(const ShapePair& shape, double abs_tolerance = 1e-12);

struct ConvergenceRow {
  std::int64_t n;
  Probability finite_accuracy;
  Probability limit_accuracy;
  double gap;
};

/// Pairs the exact finite-n accuracy with the Beta limit for each n.
/// `n_list` must be strictly ascending with every entry >= 1.
std::vector<ConvergenceRow> convergence_sweep(const ShapePair& shape,
                                              std::span<const std::int64_t> n_list);

struct GridSpec {
  double min = 0.1;
  double max = 10.0;
  double step = 0.1;

  /// min, min + step, ..., up to max (inclusive within step/1000).
  std::vector<double> values() const;
};

struct GridScanSummary {
  std::int64_t checked = 0;
  std::int64_t holding = 0;
  std::optional<PropositionReport> worst;  // smallest margin
  std::vector<PropositionReport> violations;
  std::vector<PropositionReport> rows;  // every pair with alpha > beta, in scan order
};

/// Checks every grid pair with alpha > beta. Ranges must lie within (0, 50].
GridScanSummary proposition_grid_scan(const GridSpec& alpha_range, const GridSpec& beta_range);

}  // namespace zealot
