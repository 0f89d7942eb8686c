#pragma once

#include <stdexcept>
#include <string>

namespace croof {

/// Caller supplied something outside an operation's contract.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity left its admissible range by more than rounding can explain.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pure-state measure returned a value outside [0, upper bound].
class MeasureNormalizationError : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

/// The LP master solver could not continue (singular basis, unbounded ray).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what, std::string dump = {})
      : std::runtime_error(what), dump_(std::move(dump)) {}

  const std::string& dump() const noexcept { return dump_; }

 private:
  std::string dump_;
};

}  // namespace croof
