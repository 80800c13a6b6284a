#pragma once

// Command-line front end. Every subcommand emits an OutputEnvelope: the
// command name, the fully resolved parameters (enough to reproduce the run),
// a fixed-schema table and an optional summary, as CSV or JSON.
//
//   pmf                 k, probability
//   accuracy            n, networked, independent, signal_p
//   limit               alpha, beta, signal_p, accuracy
//   normal-approx       alpha, beta, mean, variance, normal_accuracy, exact_accuracy
//   simulate            k, empirical, exact
//   verify-proposition  alpha, beta, lhs, rhs, margin, holds
//   verify-identities   step, lhs, rhs, error, satisfied
//   sweep               n, finite, limit, gap

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zealot::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Empty cells (monostate) render as an empty CSV field or JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct OutputEnvelope {
  std::string command{};
  std::vector<std::pair<std::string, std::string>> parameters{};  // flag name -> value
  std::vector<std::string> columns{};
  std::vector<std::vector<Cell>> rows{};
  std::vector<std::pair<std::string, Cell>> summary{};
  std::optional<std::uint64_t> seed{};
  std::string tool_version = kToolVersion;

  /// Argument vector (without program name) that regenerates this envelope.
  std::vector<std::string> reproduce_args() const;
};

/// Doubles are written with 17 significant digits.
std::string format_double(double value);

std::string render_csv(const OutputEnvelope& envelope);
std::string render_json(const OutputEnvelope& envelope);

/// Parses and runs one invocation. Returns 0 on success, 2 on a usage error
/// and 1 on a numerical, domain or I/O error (one diagnostic line on `err`).
int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err,
                bool color_diagnostics = false);

}  // namespace zealot::cli
