// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zealot/cli.hpp"
#include "zealot/dynamics.hpp"
#include "zealot/stationary.hpp"
#include "zealot/verify.hpp"

using namespace zealot;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0: no limit
  std::function<Outcome()> body;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (std::int64_t a = 1; a <= 5; ++a) {
    for (std::int64_t b = 1; b <= 5; ++b) {
      for (std::int64_t n = 1; n <= 40; ++n) {
        const auto chain = stationary_from_matrix(transition_matrix(PopulationSize(n), a, b));
        const auto closed = beta_binomial_pmf(
            PopulationSize(n), ShapePair(static_cast<double>(a), static_cast<double>(b)));
        worst = std::max(worst,
                         (chain.probabilities() - closed.probabilities()).cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst < 1e-10, fmt("max |detailed balance - gamma form| = %.3e (< 1e-10)", worst)};
}

Outcome uniform_case() {
  double worst = 0.0;
  for (std::int64_t n = 1; n <= 100; ++n) {
    const auto p = beta_binomial_pmf(PopulationSize(n), ShapePair(1, 1)).probabilities();
    worst = std::max(worst, (p.array() - 1.0 / static_cast<double>(n + 1)).abs().maxCoeff());
  }
  return {worst < 1e-12, fmt("max |P(X=k) - 1/(n+1)| = %.3e (< 1e-12)", worst)};
}

Outcome monte_carlo_agreement() {
  constexpr std::int64_t n = 50, a = 3, b = 2;
  SimConfig cfg;
  cfg.seed = 20240613;
  cfg.samples = 1'000'000;
  // Three relaxation times n (N - 1) / (a + b) of the slowest mode between
  // samples, so the binomial standard error is not understated.
  cfg.thinning = 3 * n * (n + a + b - 1) / (a + b);
  const auto report = run_to_stationarity(NetworkSpec::complete(n, a, b), cfg);
  const ShapePair shape(a, b);
  const double exact = majority_accuracy_networked(PopulationSize(n), shape);
  const auto pmf = beta_binomial_pmf(PopulationSize(n), shape).probabilities();
  const double tv = 0.5 * (report.empirical_pmf - pmf).cwiseAbs().sum();
  const double envelope = 4.0 * std::sqrt(static_cast<double>(n + 1) / static_cast<double>(report.samples));
  const double z = std::abs(report.accuracy_estimate - exact) / report.std_error;
  return {z < 3.0 && tv < envelope && report.samples >= 1'000'000,
          fmt("estimate %.6f vs exact %.6f: %.2f SE (< 3); TV %.4f (< %.4f); %lld samples, thinning %lld",
              report.accuracy_estimate, exact, z, tv, envelope,
              static_cast<long long>(report.samples), static_cast<long long>(*cfg.thinning))};
}

Outcome theorem_convergence() {
  const std::vector<std::int64_t> ladder{100, 1000, 10000, 100000};
  const auto rows = convergence_sweep(ShapePair(3, 2), ladder);
  bool decreasing = true;
  std::string gaps;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].gap < rows[i - 1].gap)) decreasing = false;
    gaps += fmt("%s%.3e", i ? ", " : "", rows[i].gap);
  }
  const double last = rows.back().gap;
  return {decreasing && last < 1e-2,
          fmt("gaps to 1 - I_1/2(3,2) = %.10f: [%s], strictly decreasing=%s, last < 1e-2",
              rows.back().limit_accuracy.value(), gaps.c_str(), decreasing ? "yes" : "no")};
}

Outcome proposition_grid() {
  const GridSpec grid{0.1, 10.0, 0.1};
  const auto summary = proposition_grid_scan(grid, grid);
  const auto spot = check_proposition(ShapePair(2, 1));
  const bool spot_ok = std::abs(spot.lhs - 0.75) < 1e-12 && spot.lhs > spot.rhs;
  return {summary.violations.empty() && summary.checked == 4950 && spot_ok,
          fmt("%lld pairs, %zu violations, worst margin %.3e at (%.1f, %.1f); (2,1): %.12f > %.12f",
              static_cast<long long>(summary.checked), summary.violations.size(),
              summary.worst->margin, summary.worst->shape.alpha(), summary.worst->shape.beta(),
              spot.lhs.value(), spot.rhs.value())};
}

Outcome proof_identities() {
  const auto base = check_integral_identities(ShapePair(2, 1));
  const double lhs_err = std::abs(base.steps[0].lhs_integral - 1.0 / 8.0);
  const double rhs_err = std::abs(base.steps[0].rhs_integral - 1.0 / 6.0);
  bool ok = lhs_err < 1e-10 && rhs_err < 1e-10;

  std::mt19937_64 gen(424242);
  std::uniform_real_distribution<double> beta_draw(0.1, 10.0);
  std::uniform_real_distribution<double> lift(0.1, 10.0);
  int satisfied = 0;
  for (int i = 0; i < 50; ++i) {
    const double b = beta_draw(gen);
    const auto check = check_integral_identities(ShapePair(b + lift(gen), b));
    bool all = check.pointwise_ok;
    for (const auto& step : check.steps) all = all && step.satisfied;
    satisfied += all;
  }
  ok = ok && satisfied == 50;
  return {ok, fmt("(2,1) eq24: |lhs-1/8| = %.2e, |rhs-1/6| = %.2e; %d/50 random shapes strict in all four steps",
                  lhs_err, rhs_err, satisfied)};
}

Outcome condorcet_baseline() {
  double previous = 0.0;
  bool monotone = true;
  for (std::int64_t n = 1; n <= 1001; n += 2) {
    const double acc = majority_accuracy_independent(PopulationSize(n), Probability(0.6));
    if (acc < previous) monotone = false;
    previous = acc;
  }
  return {monotone && previous > 1.0 - 1e-6,
          fmt("monotone over odd n <= 1001: %s; P_1001 = 1 - %.3e", monotone ? "yes" : "no",
              1.0 - previous)};
}

Outcome normal_regime() {
  const ShapePair shape(200, 100);
  const double exact = asymptotic_accuracy(shape);
  const double approx = normal_approx_accuracy(shape);
  return {std::abs(exact - approx) < 0.01,
          fmt("|%.12f - %.12f| = %.3e (< 0.01)", exact, approx, std::abs(exact - approx))};
}

Outcome reproducibility() {
  auto invoke = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_command(std::move(args), out, err);
    return std::pair{code, out.str()};
  };
  int identical = 0;
  int total = 0;
  for (const std::string format : {"json", "csv"}) {
    const auto [code, first] = invoke({"simulate", "--n", "2", "--alpha", "1", "--beta", "1",
                                       "--seed", "7", "--samples", "200000", "--format", format});
    if (code != 0) return {false, "simulate failed"};
    std::vector<std::string> args;
    if (format == "json") {
      args = nlohmann::json::parse(first)["reproduce"].get<std::vector<std::string>>();
    } else {
      // "# reproduce: zealot <args...>"
      const auto start = first.find("# reproduce: zealot ") + std::string("# reproduce: zealot ").size();
      std::istringstream words(first.substr(start, first.find('\n', start) - start));
      for (std::string w; words >> w;) args.push_back(w);
    }
    ++total;
    identical += invoke(args).second == first;
  }
  return {identical == total, fmt("%d/%d envelopes byte-identical when rerun from embedded parameters",
                                  identical, total)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", 5.0, oracle_equivalence},
      {2, "uniform special case", 1.0, uniform_case},
      {3, "Monte Carlo agreement", 120.0, monte_carlo_agreement},
      {4, "convergence to the Beta limit", 30.0, theorem_convergence},
      {5, "proposition grid", 5.0, proposition_grid},
      {6, "proof-step integral inequalities", 10.0, proof_identities},
      {7, "Condorcet baseline", 1.0, condorcet_baseline},
      {8, "normal-approximation regime", 1.0, normal_regime},
      {9, "simulate reproducibility", 0.0, reproducibility},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s <= 0.0 || seconds < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::string timing = fmt("%.2f s", seconds);
    if (c.time_limit_s > 0.0) timing += fmt(" (limit %.0f s)", c.time_limit_s);
    std::printf("[%s] AC%d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                outcome.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
