#pragma once

#include <stdexcept>
#include <string>

namespace fpnp {

/// A precondition of an operation was not met by its caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The time integration could not continue: non-finite values, loss of
/// positivity, domain saturation or under-resolution.
class NumericalFailure : public std::runtime_error {
 public:
  enum class Kind { Instability, Positivity, Saturation, Resolution };

  NumericalFailure(Kind kind, const std::string& what, double last_good_time)
      : std::runtime_error(what), kind_(kind), last_good_time_(last_good_time) {}

  Kind kind() const { return kind_; }
  double last_good_time() const { return last_good_time_; }

 private:
  Kind kind_;
  double last_good_time_;
};

const char* to_string(NumericalFailure::Kind kind);

/// Malformed or out-of-range run configuration. `line` is 0 when the
/// problem is not tied to a single input line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A series that cannot be regressed (too short, nonpositive, degenerate).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

/// An inequality check found a counterexample.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fpnp
