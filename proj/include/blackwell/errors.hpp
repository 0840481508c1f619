#pragma once

#include <stdexcept>
#include <string>

namespace blackwell {

/// Shape or dimensionality mismatch between inputs.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally invalid input (bad graph, malformed spec file, bad config).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller violated a documented call contract (e.g. negative cost vector
/// passed to a nonnegative-cost oracle, wrong oracle wiring for a scenario).
class ContractViolationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An internal invariant failed (e.g. an iteration cap that a proven bound
/// says cannot be hit). Indicates a bug, never silently truncated work.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative solver did not reach its target accuracy. Carries the best
/// objective value found so callers can decide whether it is usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_value)
      : std::runtime_error(what), best_value_(best_value) {}
  double best_value() const { return best_value_; }

 private:
  double best_value_;
};

}  // namespace blackwell
