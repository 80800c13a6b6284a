#include "zealot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <utility>

#include "zealot/errors.hpp"
#include "zealot/stationary.hpp"

namespace zealot {

Rng::Rng(std::uint64_t seed, std::uint64_t replica) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replica),
                    static_cast<std::uint32_t>(replica >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  __extension__ typedef unsigned __int128 u128;
  u128 product = static_cast<u128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

namespace {
// Voter and neighbour indices are drawn from 32-bit halves of one engine word.
constexpr std::uint64_t kMaxNodes = 0xFFFFFFFFull;
}  // namespace

NetworkSpec NetworkSpec::complete(std::int64_t n_free, std::int64_t correct,
                                  std::int64_t incorrect) {
  return NetworkSpec{Topology::complete, n_free, correct, incorrect, std::nullopt};
}

NetworkSpec NetworkSpec::from_edge_list(EdgeList edges) {
  std::set<NodeId> nodes;
  for (const auto& [u, v] : edges.edges) {
    nodes.insert(u);
    nodes.insert(v);
  }
  const std::set<NodeId> correct(edges.correct_zealots.begin(), edges.correct_zealots.end());
  const std::set<NodeId> incorrect(edges.incorrect_zealots.begin(), edges.incorrect_zealots.end());
  nodes.insert(correct.begin(), correct.end());
  nodes.insert(incorrect.begin(), incorrect.end());

  std::int64_t n_free = 0;
  for (NodeId id : nodes) n_free += !correct.contains(id) && !incorrect.contains(id);
  return NetworkSpec{Topology::edge_list, n_free, static_cast<std::int64_t>(correct.size()),
                     static_cast<std::int64_t>(incorrect.size()), std::move(edges)};
}

Graph build_network(const NetworkSpec& spec) {
  Graph g;
  if (spec.topology == Topology::complete) {
    if (spec.n_free < 1) throw StructuralError("network needs at least one free voter");
    if (spec.zealots_correct < 0 || spec.zealots_incorrect < 0) {
      throw StructuralError("zealot counts must be nonnegative");
    }
    if (spec.n_free + spec.zealots_correct + spec.zealots_incorrect < 2) {
      throw StructuralError("a lone free voter has no neighbour to copy");
    }
    if (static_cast<std::uint64_t>(spec.n_free + spec.zealots_correct + spec.zealots_incorrect) >
        kMaxNodes) {
      throw StructuralError("network exceeds 2^32 - 1 nodes");
    }
    g.complete_ = true;
    g.n_free_ = spec.n_free;
    g.n_correct_ = spec.zealots_correct;
    g.n_incorrect_ = spec.zealots_incorrect;
    return g;
  }

  if (!spec.edges) throw StructuralError("edge-list topology requires an edge list");
  const EdgeList& list = *spec.edges;

  const std::set<NodeId> correct(list.correct_zealots.begin(), list.correct_zealots.end());
  const std::set<NodeId> incorrect(list.incorrect_zealots.begin(), list.incorrect_zealots.end());
  for (NodeId id : correct) {
    if (incorrect.contains(id)) {
      throw StructuralError("node " + std::to_string(id) + " is declared as both kinds of zealot");
    }
  }

  std::set<NodeId> free_ids;
  std::set<std::pair<NodeId, NodeId>> undirected;
  for (auto [u, v] : list.edges) {
    for (NodeId id : {u, v}) {
      if (!correct.contains(id) && !incorrect.contains(id)) free_ids.insert(id);
    }
    // A self-loop declares the node but is not an interaction.
    if (u != v) undirected.emplace(std::min(u, v), std::max(u, v));
  }
  if (free_ids.empty()) throw StructuralError("network needs at least one free voter");

  if (free_ids.size() + correct.size() + incorrect.size() > kMaxNodes) {
    throw StructuralError("network exceeds 2^32 - 1 nodes");
  }
  g.complete_ = false;
  g.n_free_ = static_cast<std::int64_t>(free_ids.size());
  g.n_correct_ = static_cast<std::int64_t>(correct.size());
  g.n_incorrect_ = static_cast<std::int64_t>(incorrect.size());

  std::map<NodeId, std::int64_t> index;
  for (const std::set<NodeId>* group : {&std::as_const(free_ids), &correct, &incorrect}) {
    for (NodeId id : *group) {
      index.emplace(id, static_cast<std::int64_t>(g.original_ids_.size()));
      g.original_ids_.push_back(id);
    }
  }

  std::vector<std::vector<std::int64_t>> adjacency(static_cast<std::size_t>(g.n_free_));
  for (const auto& [u, v] : undirected) {
    const auto iu = index.at(u);
    const auto iv = index.at(v);
    if (iu < g.n_free_) adjacency[iu].push_back(iv);
    if (iv < g.n_free_) adjacency[iv].push_back(iu);
  }

  g.offsets_.assign(1, 0);
  for (std::int64_t i = 0; i < g.n_free_; ++i) {
    auto& row = adjacency[i];
    if (row.empty()) {
      throw StructuralError("free voter " + std::to_string(g.original_ids_[i]) +
                            " has no neighbours");
    }
    std::sort(row.begin(), row.end());
    g.targets_.insert(g.targets_.end(), row.begin(), row.end());
    g.offsets_.push_back(static_cast<std::int64_t>(g.targets_.size()));
  }
  return g;
}

SimState initial_state(const Graph& graph, Rng& rng) {
  SimState s;
  s.states.resize(static_cast<std::size_t>(graph.free_count()));
  for (std::int64_t i = 0; i < graph.free_count(); ++i) {
    const bool v = rng.coin();
    s.states[i] = v;
    s.correct_count += v;
  }
  return s;
}

int step(SimState& state, const Graph& graph, Rng& rng) {
  const std::uint64_t word = rng.next();
  const auto n_free = static_cast<std::uint32_t>(graph.free_count());
  std::uint32_t pick = 0;
  const std::int64_t voter = Rng::reduce32(static_cast<std::uint32_t>(word >> 32), n_free, pick)
                                 ? pick
                                 : static_cast<std::int64_t>(rng.uniform_index(n_free));
  const auto degree = static_cast<std::uint32_t>(graph.degree(voter));
  const std::int64_t j = Rng::reduce32(static_cast<std::uint32_t>(word), degree, pick)
                             ? pick
                             : static_cast<std::int64_t>(rng.uniform_index(degree));
  const std::int64_t other = graph.neighbor(voter, j);

  bool copied;
  switch (graph.kind(other)) {
    case NodeKind::free_voter: copied = state.states[other]; break;
    case NodeKind::correct_zealot: copied = true; break;
    default: copied = false; break;
  }
  const bool current = state.states[voter];
  if (copied == current) return 0;
  state.states[voter] = copied;
  const int delta = copied ? 1 : -1;
  state.correct_count += delta;
  return delta;
}

SimConfig resolved_config(const NetworkSpec& spec, const SimConfig& config) {
  SimConfig out = config;
  const std::int64_t total = spec.n_free + spec.zealots_correct + spec.zealots_incorrect;
  if (!out.burn_in) out.burn_in = 50 * spec.n_free * total;
  if (!out.thinning) out.thinning = spec.n_free;
  return out;
}

namespace {

void validate(const NetworkSpec& spec, const SimConfig& config) {
  if (config.samples < 1 || *config.burn_in < 1 || *config.thinning < 1) {
    throw DomainError("burn-in, samples and thinning must all be at least 1");
  }
  if (spec.topology == Topology::complete &&
      (spec.zealots_correct < 1 || spec.zealots_incorrect < 1)) {
    throw DomainError(
        "complete topology needs at least one zealot of each kind; otherwise the chain absorbs");
  }
}

void finalize(SimulationReport& r) {
  std::int64_t total = 0;
  std::int64_t correct = 0;
  const std::int64_t threshold = majority_threshold(r.n);
  for (std::int64_t k = 0; k <= r.n; ++k) {
    total += r.counts[k];
    if (k >= threshold) correct += r.counts[k];
  }
  r.samples = total;
  r.empirical_pmf = Eigen::VectorXd(r.n + 1);
  for (std::int64_t k = 0; k <= r.n; ++k) {
    r.empirical_pmf(k) = static_cast<double>(r.counts[k]) / static_cast<double>(total);
  }
  r.accuracy_estimate = static_cast<double>(correct) / static_cast<double>(total);
  r.std_error =
      std::sqrt(r.accuracy_estimate * (1.0 - r.accuracy_estimate) / static_cast<double>(total));
}

}  // namespace

SimulationReport run_replica(const NetworkSpec& spec, const SimConfig& config,
                             std::uint64_t replica) {
  const SimConfig cfg = resolved_config(spec, config);
  validate(spec, cfg);
  const Graph graph = build_network(spec);

  Rng rng(cfg.seed, replica);
  SimState state = initial_state(graph, rng);
  for (std::int64_t t = 0; t < *cfg.burn_in; ++t) step(state, graph, rng);

  SimulationReport r;
  r.n = graph.free_count();
  r.counts.assign(static_cast<std::size_t>(r.n + 1), 0);
  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    for (std::int64_t t = 0; t < *cfg.thinning; ++t) step(state, graph, rng);
    ++r.counts[state.correct_count];
  }
  r.seed = cfg.seed;
  r.burn_in_steps = *cfg.burn_in;
  r.thinning = *cfg.thinning;
  finalize(r);
  return r;
}

SimulationReport run_to_stationarity(const NetworkSpec& spec, const SimConfig& config) {
  return run_replica(spec, config, 0);
}

SimulationReport merge_reports(std::span<const SimulationReport> reports) {
  if (reports.empty()) throw DomainError("merge_reports: nothing to merge");
  SimulationReport merged = reports.front();
  merged.replicas = 0;
  std::fill(merged.counts.begin(), merged.counts.end(), 0);
  for (const auto& r : reports) {
    if (r.n != merged.n) throw DomainError("merge_reports: reports describe different networks");
    for (std::size_t k = 0; k < r.counts.size(); ++k) merged.counts[k] += r.counts[k];
    merged.replicas += r.replicas;
  }
  finalize(merged);
  return merged;
}

SimulationReport run_replicas(const NetworkSpec& spec, const SimConfig& config,
                              std::int64_t replicas, unsigned threads) {
  if (replicas < 1) throw DomainError("run_replicas: need at least one replica");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, replicas));

  std::vector<SimulationReport> reports(static_cast<std::size_t>(replicas));
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (auto r = static_cast<std::int64_t>(w); r < replicas; r += threads) {
            reports[r] = run_replica(spec, config, static_cast<std::uint64_t>(r));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return merge_reports(reports);
}

AccuracyEstimate estimate_accuracy(const NetworkSpec& spec, const SimConfig& config) {
  AccuracyEstimate out;
  out.report = run_to_stationarity(spec, config);
  out.n = out.report.n;
  out.estimate = out.report.accuracy_estimate;
  out.std_error = out.report.std_error;
  const std::int64_t zealots = spec.zealots_correct + spec.zealots_incorrect;
  if (zealots > 0) {
    out.signal_p = Probability(static_cast<double>(spec.zealots_correct) /
                               static_cast<double>(zealots));
  }
  if (spec.topology == Topology::complete) {
    out.analytic = majority_accuracy_networked(
        PopulationSize(spec.n_free),
        ShapePair(static_cast<double>(spec.zealots_correct),
                  static_cast<double>(spec.zealots_incorrect)));
  }
  return out;
}

}  // namespace zealot
