#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace snpa {

// Bad input or configuration. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a mathematical function (e.g. a gamma pole).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failure during a computation. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistic is undefined for the given data (e.g. an all-zero sample).
class DegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Non-finite value produced by a recursion. `index` counts steps from the
// start of the burn-in, so index < burn_in means the failure happened before
// the first returned observation.
class SimulationError : public NumericalError {
 public:
  SimulationError(const std::string& what, std::size_t index)
      : NumericalError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Optimizer failure; `trace` holds the last few objective evaluations.
class EstimationError : public NumericalError {
 public:
  EstimationError(const std::string& what, std::vector<std::string> trace = {})
      : NumericalError(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::vector<std::string> trace_;
};

}  // namespace snpa
