#pragma once

// Discrete-time voter model with zealots. At every step one free voter is
// drawn uniformly and copies the state of a uniformly drawn neighbour (never
// itself). Zealots hold their state forever.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zealot/edge_list.hpp"
#include "zealot/special_fn.hpp"

namespace zealot {

/// Seedable generator with a fixed stream-splitting rule: replica r of a run
/// with seed s draws from mt19937_64 seeded by std::seed_seq over the 32-bit
/// halves {lo(s), hi(s), lo(r), hi(r)}. Both mt19937_64 and seed_seq are fully
/// specified by the standard, and bounded draws use Lemire's multiply-shift
/// rejection, so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t replica = 0);

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Raw 64-bit engine output.
  std::uint64_t next() { return engine_(); }

  /// Lemire reduction of 32 uniform bits onto [0, bound). Returns false when
  /// the bits land in the rejection zone (probability < bound / 2^32).
  static bool reduce32(std::uint32_t bits, std::uint32_t bound, std::uint32_t& out) {
    const std::uint64_t product = static_cast<std::uint64_t>(bits) * bound;
    const auto low = static_cast<std::uint32_t>(product);
    if (low < bound && low < static_cast<std::uint32_t>(0u - bound) % bound) return false;
    out = static_cast<std::uint32_t>(product >> 32);
    return true;
  }
  /// Fair coin.
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

enum class Topology { complete, edge_list };

struct NetworkSpec {
  Topology topology = Topology::complete;
  std::int64_t n_free = 0;
  std::int64_t zealots_correct = 0;
  std::int64_t zealots_incorrect = 0;
  std::optional<EdgeList> edges;

  static NetworkSpec complete(std::int64_t n_free, std::int64_t correct, std::int64_t incorrect);
  /// Counts are derived from the edge list (free voters are the ids not
  /// declared as zealots).
  static NetworkSpec from_edge_list(EdgeList edges);
};

enum class NodeKind { free_voter, correct_zealot, incorrect_zealot };

/// Nodes are renumbered as [free voters | correct zealots | incorrect zealots].
/// The complete graph is implicit; edge-list graphs keep compressed adjacency
/// rows for free voters only, since zealots never update.
class Graph {
 public:
  std::int64_t free_count() const noexcept { return n_free_; }
  std::int64_t correct_zealots() const noexcept { return n_correct_; }
  std::int64_t incorrect_zealots() const noexcept { return n_incorrect_; }
  std::int64_t node_count() const noexcept { return n_free_ + n_correct_ + n_incorrect_; }
  bool is_complete() const noexcept { return complete_; }

  NodeKind kind(std::int64_t node) const noexcept {
    if (node < n_free_) return NodeKind::free_voter;
    return node < n_free_ + n_correct_ ? NodeKind::correct_zealot : NodeKind::incorrect_zealot;
  }

  std::int64_t degree(std::int64_t free_voter) const noexcept {
    return complete_ ? node_count() - 1 : offsets_[free_voter + 1] - offsets_[free_voter];
  }

  /// j-th neighbour of a free voter, 0 <= j < degree(free_voter).
  std::int64_t neighbor(std::int64_t free_voter, std::int64_t j) const noexcept {
    if (complete_) return j < free_voter ? j : j + 1;
    return targets_[offsets_[free_voter] + j];
  }

  /// Original id of each renumbered node (edge-list graphs only).
  const std::vector<NodeId>& original_ids() const noexcept { return original_ids_; }

  friend Graph build_network(const NetworkSpec& spec);

 private:
  Graph() = default;

  bool complete_ = true;
  std::int64_t n_free_ = 0;
  std::int64_t n_correct_ = 0;
  std::int64_t n_incorrect_ = 0;
  std::vector<std::int64_t> offsets_;
  std::vector<std::int64_t> targets_;
  std::vector<NodeId> original_ids_;
};

/// Throws StructuralError for isolated free voters, nodes declared as both
/// kinds of zealot, or a network without free voters. Duplicate edges are
/// merged; a self-loop "u u" declares node u without connecting it.
Graph build_network(const NetworkSpec& spec);

struct SimState {
  std::vector<bool> states;
  std::int64_t correct_count = 0;
};

/// Each free voter starts correct or incorrect with probability 1/2.
SimState initial_state(const Graph& graph, Rng& rng);

/// One update. Returns the change in X (-1, 0 or +1).
///
/// A single engine word supplies both choices: the high half picks the voter
/// and the low half its neighbour. Either half that falls in its rejection
/// zone is replaced by a fresh uniform_index draw, which keeps both choices
/// exactly uniform.
int step(SimState& state, const Graph& graph, Rng& rng);

struct SimConfig {
  std::optional<std::int64_t> burn_in;   // default 50 * n * (n + alpha + beta)
  std::int64_t samples = 100'000;
  std::optional<std::int64_t> thinning;  // default n
  std::uint64_t seed = 1;
};

struct SimulationReport {
  std::int64_t n = 0;
  std::vector<std::int64_t> counts;  // visits of X = k over the samples
  Eigen::VectorXd empirical_pmf;
  double accuracy_estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  std::int64_t burn_in_steps = 0;
  std::int64_t samples = 0;
  std::int64_t thinning = 0;
  std::int64_t replicas = 1;

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Resolves the burn-in and thinning defaults for a given network.
SimConfig resolved_config(const NetworkSpec& spec, const SimConfig& config);

/// Runs replica 0 of the chain: burn-in, then `samples` observations of X
/// spaced `thinning` steps apart.
SimulationReport run_to_stationarity(const NetworkSpec& spec, const SimConfig& config);

/// Runs one chain on stream `replica` of `config.seed`.
SimulationReport run_replica(const NetworkSpec& spec, const SimConfig& config,
                             std::uint64_t replica);

/// Independent replicas 0..replicas-1, each with config.samples samples, run
/// on up to `threads` threads and merged. The result does not depend on the
/// thread count.
SimulationReport run_replicas(const NetworkSpec& spec, const SimConfig& config,
                              std::int64_t replicas, unsigned threads = 0);

/// Pools the counts of several reports of the same network.
SimulationReport merge_reports(std::span<const SimulationReport> reports);

struct AccuracyEstimate {
  std::int64_t n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<Probability> analytic;  // complete graph only
  std::optional<Probability> signal_p;
  SimulationReport report;
};

AccuracyEstimate estimate_accuracy(const NetworkSpec& spec, const SimConfig& config);

}  // namespace zealot
