#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature. The rule never
// evaluates the interval endpoints, so integrable endpoint singularities such
// as t^(a-1) with 0 < a < 1 are handled by repeated bisection toward the
// singular end. Bisection toward a nonzero endpoint stops at the spacing of
// doubles there, so strong singularities belong at a limit equal to 0.

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "zealot/errors.hpp"

namespace zealot {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // sum of per-interval |K15 - G7| estimates
  int intervals = 0;
};

namespace detail {

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Segment kronrod_segment(const F& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_centre = f(centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  if (!std::isfinite(kronrod)) {
    throw NumericalError("integrate: integrand is not finite near [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]",
                         0, std::numeric_limits<double>::infinity());
  }
  return Segment{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integrates f over [lo, hi] until the summed error estimate is at most
/// `abs_tolerance`. Throws NumericalError (carrying the interval count and the
/// achieved error) after `max_intervals` subdivisions.
template <class F>
QuadratureResult integrate(const F& f, double lo, double hi, double abs_tolerance = 1e-10,
                           int max_intervals = 20000) {
  if (!(lo <= hi)) throw DomainError("integrate: lower limit exceeds upper limit");
  if (lo == hi) return {};

  std::priority_queue<detail::Segment> heap;
  heap.push(detail::kronrod_segment(f, lo, hi));
  double value = heap.top().value;
  double error = heap.top().error;
  int intervals = 1;

  while (error > abs_tolerance) {
    if (intervals >= max_intervals) {
      throw NumericalError("integrate: tolerance " + std::to_string(abs_tolerance) +
                               " not reached, achieved " + std::to_string(error),
                           intervals, error);
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw NumericalError("integrate: interval cannot be subdivided further", intervals, error);
    }
    const auto left = detail::kronrod_segment(f, worst.lo, mid);
    const auto right = detail::kronrod_segment(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Re-add from scratch to shed the drift of the running updates.
  double total = 0.0;
  double total_error = 0.0;
  for (; !heap.empty(); heap.pop()) {
    total += heap.top().value;
    total_error += heap.top().error;
  }
  return QuadratureResult{total, total_error, intervals};
}

}  // namespace zealot
