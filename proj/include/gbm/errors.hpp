#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gbm/kinetics.hpp"

namespace gbm {

/// Rejected input data: out-of-box initial conditions, non-positive steps, bad grids.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time integrator produced a non-finite state.
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, StateTriple state, double time)
      : std::runtime_error(what), state_(state), time_(time) {}

  const StateTriple& state() const noexcept { return state_; }
  double time() const noexcept { return time_; }

 private:
  StateTriple state_;
  double time_;
};

/// An iterative linear or eigenvalue solve did not reach its tolerance.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double residual, double time = 0.0)
      : std::runtime_error(what), residual_(residual), time_(time) {}

  double residual() const noexcept { return residual_; }
  /// Simulation time of the failing step (0 outside time loops).
  double time() const noexcept { return time_; }

 private:
  double residual_;
  double time_;
};

/// Configuration text failed validation. Carries every problem found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

}  // namespace gbm
