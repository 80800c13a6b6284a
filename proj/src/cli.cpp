#include "zealot/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zealot/dynamics.hpp"
#include "zealot/edge_list.hpp"
#include "zealot/errors.hpp"
#include "zealot/stationary.hpp"
#include "zealot/verify.hpp"

namespace zealot::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

std::string csv_cell(const Cell& cell) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visitor;
  return std::visit(visitor, cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return format_double(v);
      return v;
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  } visitor;
  return std::visit(visitor, cell);
}

}  // namespace

std::vector<std::string> OutputEnvelope::reproduce_args() const {
  std::vector<std::string> args{command};
  for (const auto& [key, value] : parameters) {
    args.push_back("--" + key);
    if (!value.empty()) args.push_back(value);
  }
  return args;
}

std::string render_csv(const OutputEnvelope& e) {
  std::ostringstream out;
  out << "# command: " << e.command << '\n';
  out << "# tool_version: " << e.tool_version << '\n';
  if (e.seed) out << "# seed: " << *e.seed << '\n';
  out << "# parameters:";
  for (const auto& [key, value] : e.parameters) out << ' ' << key << '=' << value;
  out << '\n';
  out << "# reproduce: zealot";
  for (const auto& arg : e.reproduce_args()) out << ' ' << arg;
  out << '\n';
  for (const auto& [key, value] : e.summary) out << "# summary: " << key << '=' << csv_cell(value) << '\n';
  for (std::size_t i = 0; i < e.columns.size(); ++i) out << (i ? "," : "") << e.columns[i];
  out << '\n';
  for (const auto& row : e.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string render_json(const OutputEnvelope& e) {
  nlohmann::ordered_json doc;
  doc["command"] = e.command;
  doc["tool_version"] = e.tool_version;
  doc["seed"] = e.seed ? nlohmann::ordered_json(*e.seed) : nlohmann::ordered_json(nullptr);
  auto& params = doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : e.parameters) params[key] = value;
  doc["reproduce"] = e.reproduce_args();
  auto& summary = doc["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : e.summary) summary[key] = json_cell(value);
  doc["columns"] = e.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : e.rows) {
    auto& r = rows.emplace_back(nlohmann::ordered_json::array());
    for (const auto& cell : row) r.push_back(json_cell(cell));
  }
  return doc.dump(2) + "\n";
}

namespace {

struct Options {
  std::vector<std::int64_t> n;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> p;
  std::uint64_t seed = 1;
  std::int64_t samples = 100'000;
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> thinning;
  std::int64_t replicas = 1;
  std::string edges;
  std::string format = "csv";
  std::string out;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<double> grid_step;
  double tolerance = 1e-10;
  bool with_limit = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ShapePair require_shape(const Options& o) {
  if (!o.alpha || !o.beta) throw UsageError("--alpha and --beta are required");
  return ShapePair(*o.alpha, *o.beta);
}

std::int64_t require_single_n(const Options& o) {
  if (o.n.size() != 1) throw UsageError("--n takes exactly one value here");
  return o.n.front();
}

std::string join_ints(const std::vector<std::int64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s;
}

void add_shape_params(OutputEnvelope& e, const ShapePair& shape) {
  e.parameters.emplace_back("alpha", format_double(shape.alpha()));
  e.parameters.emplace_back("beta", format_double(shape.beta()));
}

OutputEnvelope cmd_pmf(const Options& o) {
  const std::int64_t n = require_single_n(o);
  const ShapePair shape = require_shape(o);
  OutputEnvelope e{.command = "pmf"};
  e.parameters.emplace_back("n", std::to_string(n));
  add_shape_params(e, shape);
  e.columns = {"k", "probability"};
  const auto pmf = beta_binomial_pmf(PopulationSize(n), shape);
  for (std::int64_t k = 0; k <= n; ++k) e.rows.push_back({k, pmf.probability(k)});
  return e;
}

OutputEnvelope cmd_accuracy(const Options& o) {
  if (o.n.empty()) throw UsageError("--n is required");
  OutputEnvelope e{.command = "accuracy"};
  e.parameters.emplace_back("n", join_ints(o.n));
  e.columns = {"n", "networked", "independent", "signal_p"};

  if (o.p && !o.alpha && !o.beta) {
    // Independent voters only: no zealot shape, so no networked column.
    if (o.with_limit) throw UsageError("--with-limit needs --alpha and --beta");
    const Probability p(*o.p);
    e.parameters.emplace_back("p", format_double(p));
    for (std::int64_t n : o.n) {
      e.rows.push_back({n, std::monostate{},
                        majority_accuracy_independent(PopulationSize(n), p).value(), p.value()});
    }
    return e;
  }
  if (o.p) throw UsageError("--p cannot be combined with --alpha/--beta");
  const ShapePair shape = require_shape(o);
  add_shape_params(e, shape);
  for (std::int64_t n : o.n) {
    const auto row = accuracy_row(PopulationSize(n), shape);
    e.rows.push_back({n, row.networked.value(), row.independent.value(), row.signal_p.value()});
  }
  if (o.with_limit) {
    e.parameters.emplace_back("with-limit", "");
    const auto row = accuracy_limit_row(shape);
    e.rows.push_back({std::string("inf"), row.networked.value(), row.independent.value(),
                      row.signal_p.value()});
  }
  return e;
}

OutputEnvelope cmd_limit(const Options& o) {
  const ShapePair shape = require_shape(o);
  OutputEnvelope e{.command = "limit"};
  add_shape_params(e, shape);
  e.columns = {"alpha", "beta", "signal_p", "accuracy"};
  e.rows.push_back(
      {shape.alpha(), shape.beta(), shape.signal_p(), asymptotic_accuracy(shape).value()});
  return e;
}

OutputEnvelope cmd_normal(const Options& o) {
  const ShapePair shape = require_shape(o);
  OutputEnvelope e{.command = "normal-approx"};
  add_shape_params(e, shape);
  e.columns = {"alpha", "beta", "mean", "variance", "normal_accuracy", "exact_accuracy"};
  const auto approx = normal_approx(shape);
  e.rows.push_back({shape.alpha(), shape.beta(), approx.mean, approx.variance,
                    approx.accuracy.value(), asymptotic_accuracy(shape).value()});
  return e;
}

std::int64_t integer_count(double value, const char* flag) {
  if (!(value >= 0.0) || value != std::floor(value)) {
    throw DomainError(std::string("--") + flag + " must be a nonnegative integer for simulation");
  }
  return static_cast<std::int64_t>(value);
}

OutputEnvelope cmd_simulate(const Options& o) {
  OutputEnvelope e{.command = "simulate"};
  NetworkSpec spec;
  if (!o.edges.empty()) {
    if (!o.n.empty() || o.alpha || o.beta) {
      throw UsageError("--edges cannot be combined with --n/--alpha/--beta");
    }
    spec = NetworkSpec::from_edge_list(read_edge_list(o.edges));
    e.parameters.emplace_back("edges", o.edges);
  } else {
    const std::int64_t n = require_single_n(o);
    if (!o.alpha || !o.beta) throw UsageError("--alpha and --beta are required");
    spec = NetworkSpec::complete(n, integer_count(*o.alpha, "alpha"),
                                 integer_count(*o.beta, "beta"));
    e.parameters.emplace_back("n", std::to_string(n));
    e.parameters.emplace_back("alpha", std::to_string(spec.zealots_correct));
    e.parameters.emplace_back("beta", std::to_string(spec.zealots_incorrect));
  }

  SimConfig config;
  config.seed = o.seed;
  config.samples = o.samples;
  config.burn_in = o.burn_in;
  config.thinning = o.thinning;
  config = resolved_config(spec, config);
  if (o.replicas < 1) throw DomainError("--replicas must be at least 1");

  e.seed = config.seed;
  e.parameters.emplace_back("seed", std::to_string(config.seed));
  e.parameters.emplace_back("samples", std::to_string(config.samples));
  e.parameters.emplace_back("burn-in", std::to_string(*config.burn_in));
  e.parameters.emplace_back("thinning", std::to_string(*config.thinning));
  e.parameters.emplace_back("replicas", std::to_string(o.replicas));

  const SimulationReport report = o.replicas == 1 ? run_to_stationarity(spec, config)
                                                  : run_replicas(spec, config, o.replicas);

  std::optional<BetaBinomialPmf> exact;
  std::optional<Probability> analytic;
  if (spec.topology == Topology::complete) {
    const ShapePair shape(static_cast<double>(spec.zealots_correct),
                          static_cast<double>(spec.zealots_incorrect));
    exact = beta_binomial_pmf(PopulationSize(spec.n_free), shape);
    analytic = majority_accuracy_networked(PopulationSize(spec.n_free), shape);
  }

  e.columns = {"k", "empirical", "exact"};
  for (std::int64_t k = 0; k <= report.n; ++k) {
    Cell exact_cell = exact ? Cell(exact->probability(k)) : Cell(std::monostate{});
    e.rows.push_back({k, report.empirical_pmf(k), exact_cell});
  }
  e.summary = {{"n_free", report.n},
               {"samples_total", report.samples},
               {"accuracy_estimate", report.accuracy_estimate},
               {"std_error", report.std_error},
               {"analytic_accuracy", analytic ? Cell(analytic->value()) : Cell(std::monostate{})}};
  return e;
}

OutputEnvelope cmd_verify_proposition(const Options& o) {
  OutputEnvelope e{.command = "verify-proposition"};
  e.columns = {"alpha", "beta", "lhs", "rhs", "margin", "holds"};
  auto push = [&](const PropositionReport& r) {
    e.rows.push_back({r.shape.alpha(), r.shape.beta(), r.lhs.value(), r.rhs.value(), r.margin,
                      r.holds});
  };

  const bool grid = o.grid_min || o.grid_max || o.grid_step;
  if (grid) {
    if (o.alpha || o.beta) throw UsageError("grid flags cannot be combined with --alpha/--beta");
    GridSpec range;
    if (o.grid_min) range.min = *o.grid_min;
    if (o.grid_max) range.max = *o.grid_max;
    if (o.grid_step) range.step = *o.grid_step;
    e.parameters.emplace_back("grid-min", format_double(range.min));
    e.parameters.emplace_back("grid-max", format_double(range.max));
    e.parameters.emplace_back("grid-step", format_double(range.step));
    const auto summary = proposition_grid_scan(range, range);
    for (const auto& r : summary.rows) push(r);
    e.summary = {{"checked", summary.checked},
                 {"holding", summary.holding},
                 {"violations", static_cast<std::int64_t>(summary.violations.size())}};
    if (summary.worst) {
      e.summary.emplace_back("worst_alpha", summary.worst->shape.alpha());
      e.summary.emplace_back("worst_beta", summary.worst->shape.beta());
      e.summary.emplace_back("worst_margin", summary.worst->margin);
    }
    return e;
  }
  const ShapePair shape = require_shape(o);
  add_shape_params(e, shape);
  push(check_proposition(shape));
  return e;
}

OutputEnvelope cmd_verify_identities(const Options& o) {
  const ShapePair shape = require_shape(o);
  OutputEnvelope e{.command = "verify-identities"};
  add_shape_params(e, shape);
  e.parameters.emplace_back("tolerance", format_double(o.tolerance));
  const auto check = check_integral_identities(shape, o.tolerance);
  e.columns = {"step", "lhs", "rhs", "error", "satisfied"};
  for (const auto& r : check.steps) {
    e.rows.push_back({std::string(to_string(r.step)), r.lhs_integral, r.rhs_integral,
                      r.quadrature_error, r.satisfied});
  }
  e.summary = {{"pointwise_residual", check.pointwise_residual},
               {"pointwise_ok", check.pointwise_ok}};
  return e;
}

OutputEnvelope cmd_sweep(const Options& o, const std::vector<std::int64_t>& n_list) {
  const ShapePair shape = require_shape(o);
  OutputEnvelope e{.command = "sweep"};
  add_shape_params(e, shape);
  e.parameters.emplace_back("n-list", join_ints(n_list));
  e.columns = {"n", "finite", "limit", "gap"};
  for (const auto& r : convergence_sweep(shape, n_list)) {
    e.rows.push_back({r.n, r.finite_accuracy.value(), r.limit_accuracy.value(), r.gap});
  }
  return e;
}

void diagnose(std::ostream& err, bool color, const std::string& message) {
  if (color) {
    err << "\033[1;31mzealot: error:\033[0m " << message << '\n';
  } else {
    err << "zealot: error: " << message << '\n';
  }
}

}  // namespace

int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err,
                bool color_diagnostics) {
  Options o;
  std::vector<std::int64_t> n_list{100, 1000, 10000, 100000};

  CLI::App app{"Voter model with zealots: stationary law, majority accuracy and checks", "zealot"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto common_output = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Write output to PATH instead of stdout");
  };
  auto shape_options = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "Correct-zealot strength (alpha > 0)");
    sub->add_option("--beta", o.beta, "Incorrect-zealot strength (beta > 0)");
  };

  auto* pmf = app.add_subcommand("pmf", "Stationary law of the number of correct free voters");
  pmf->add_option("--n", o.n, "Number of free voters")->required();
  shape_options(pmf);
  common_output(pmf);

  auto* accuracy =
      app.add_subcommand("accuracy", "Finite-n majority accuracy, networked and independent");
  accuracy->add_option("--n", o.n, "Number of free voters (comma-separated list allowed)")
      ->required()
      ->delimiter(',');
  shape_options(accuracy);
  accuracy->add_option("--p", o.p, "Individual accuracy for independent voters only");
  accuracy->add_flag("--with-limit", o.with_limit, "Append the n -> infinity row");
  common_output(accuracy);

  auto* limit = app.add_subcommand("limit", "Infinite-population majority accuracy");
  shape_options(limit);
  common_output(limit);

  auto* normal = app.add_subcommand("normal-approx", "Normal approximation of the limit");
  shape_options(normal);
  common_output(normal);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the voter dynamics");
  simulate->add_option("--n", o.n, "Number of free voters (complete graph)");
  shape_options(simulate);
  simulate->add_option("--edges", o.edges, "Edge-list file (replaces --n/--alpha/--beta)");
  simulate->add_option("--seed", o.seed, "RNG seed");
  simulate->add_option("--samples", o.samples, "Samples per replica");
  simulate->add_option("--burn-in", o.burn_in, "Steps discarded before sampling");
  simulate->add_option("--thinning", o.thinning, "Steps between samples");
  simulate->add_option("--replicas", o.replicas, "Independent replicas to pool");
  common_output(simulate);

  auto* proposition =
      app.add_subcommand("verify-proposition", "Check 1 - I_1/2(a,b) > a/(a+b)");
  shape_options(proposition);
  proposition->add_option("--grid-min", o.grid_min, "Smallest grid value (default 0.1)");
  proposition->add_option("--grid-max", o.grid_max, "Largest grid value (default 10)");
  proposition->add_option("--grid-step", o.grid_step, "Grid step (default 0.1)");
  common_output(proposition);

  auto* identities =
      app.add_subcommand("verify-identities", "Check each integral inequality by quadrature");
  shape_options(identities);
  identities->add_option("--tolerance", o.tolerance, "Absolute quadrature tolerance");
  common_output(identities);

  auto* sweep = app.add_subcommand("sweep", "Finite-n accuracy against the limit");
  shape_options(sweep);
  sweep->add_option("--n-list", n_list, "Ascending population sizes")->delimiter(',');
  common_output(sweep);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    diagnose(err, color_diagnostics, e.what());
    return 2;
  }

  try {
    OutputEnvelope envelope;
    if (pmf->parsed()) envelope = cmd_pmf(o);
    else if (accuracy->parsed()) envelope = cmd_accuracy(o);
    else if (limit->parsed()) envelope = cmd_limit(o);
    else if (normal->parsed()) envelope = cmd_normal(o);
    else if (simulate->parsed()) envelope = cmd_simulate(o);
    else if (proposition->parsed()) envelope = cmd_verify_proposition(o);
    else if (identities->parsed()) envelope = cmd_verify_identities(o);
    else envelope = cmd_sweep(o, n_list);

    envelope.parameters.emplace_back("format", o.format);
    const std::string text = o.format == "json" ? render_json(envelope) : render_csv(envelope);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!(file << text)) throw std::runtime_error("cannot write '" + o.out + "'");
    }
    return 0;
  } catch (const UsageError& e) {
    diagnose(err, color_diagnostics, e.what());
    return 2;
  } catch (const std::exception& e) {
    diagnose(err, color_diagnostics, e.what());
    return 1;
  }
}

}  // namespace zealot::cli
