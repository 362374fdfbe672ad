#pragma once

#include <cstddef>

#include "gbm/grid.hpp"
#include "gbm/kinetics.hpp"

namespace gbm::spectral {

struct EigenResult {
  double lambda1 = 0.0;
  ScalarField eigenfield;  ///< max-norm 1, nonnegative
  std::size_t iterations = 0;
  double residual = 0.0;   ///< ||A v - lambda v||_2 / ||v||_2
};

struct EigenOptions {
  double tol = 1e-10;
  std::size_t max_iterations = 5000;
};

/// Smallest eigenvalue of -Lap_h + diag(potential) with mirror (Neumann) closure.
///
/// Shift-inverted power iteration with shift min(potential) - 1; each inner
/// solve is a CG solve. Converged when the Rayleigh quotient moves by <= tol
/// and the operator residual is <= tol (1 + |lambda|).
/// Throws SolverFailure with the last residual when the cap is reached.
EigenResult lambda1(const ScalarField& potential, const EigenOptions& options = {});

struct RhoCondition {
  bool holds = false;  ///< rho < lambda1(-Lap + beta1 N0)
  double margin = 0.0; ///< lambda1 - rho
  double lambda1 = 0.0;
};

/// Tumor-extinction gate: compares rho with lambda1(-Lap + beta1 n0).
RhoCondition check_rho_condition(const Params& p, const ScalarField& n0,
                                 const EigenOptions& options = {});

}  // namespace gbm::spectral
