#pragma once

#include <stdexcept>
#include <string>

namespace zealot {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative scheme failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, int iterations, double achieved)
      : std::runtime_error(what), iterations_(iterations), achieved_(achieved) {}

  int iterations() const noexcept { return iterations_; }
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  int iterations_;
  double achieved_;
};

// A Markov chain or graph whose structure violates a required property
// (zero down-rate in a birth-death chain, isolated free voter, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zealot

namespace zealot {

// Malformed input file (edge lists).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zealot
