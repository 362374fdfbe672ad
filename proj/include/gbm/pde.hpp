#pragma once

#include <cstddef>
#include <span>

#include "gbm/grid.hpp"
#include "gbm/kinetics.hpp"
#include "gbm/report.hpp"

namespace gbm::pde {

struct StepOptions {
  double cg_tol = 1e-10;
  std::size_t cg_max_iterations = 0;  ///< 0 selects 10 * nx * ny
};

struct StepStats {
  std::size_t cg_iterations = 0;
  double cg_residual = 0.0;
  double necrosis_max = 0.0;  ///< max N of the new level
};

/// One first-order IMEX step of the tumor / necrosis / vasculature system:
///   (I - dt kappa0 Lap) T' = T + dt f1,   N' = N + dt f2,   Phi' = Phi + dt f3,
/// with every rate taken from the truncated kinetics at the old level.
/// Throws SolverFailure (with the residual) when the implicit solve fails.
GridState imex_step(const GridState& s, double dt, const Params& p,
                    const StepOptions& options = {}, StepStats* stats = nullptr);

/// Largest step keeping the explicit reaction update contractive on the invariant box,
///   0.5 / (rho + alpha + (beta1 + beta2 + delta) necrosis_cap + 2 gamma).
double max_stable_dt(const Params& p, double necrosis_cap) noexcept;

/// Hook invoked after every accepted step.
class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_start(const GridState& /*initial*/, RunReport& /*report*/) {}
  virtual void on_step(const GridState& previous, const GridState& current, RunReport& report) = 0;
  virtual void on_finish(const GridState& /*final_state*/, RunReport& /*report*/) {}
};

struct SimulationOptions {
  double sample_interval = 1.0;  ///< days between recorded norm samples (<= 0: every step)
  StepOptions step;
  /// Reject steps above max_stable_dt evaluated with the running max of N (floored at K).
  bool enforce_dt_cap = true;
};

struct SimulationResult {
  GridState final_state;
  RunReport report;
};

NormSample sample_norms(const GridState& s);

/// Advance `initial` to t_end with fixed steps (the last one shortened to land on t_end).
///
/// Throws InvalidInput when the initial data leave [0, K] or dt is out of range, and
/// rethrows solver failures stamped with the failing time.
SimulationResult run_simulation(const GridState& initial, double t_end, double dt,
                                const Params& p, std::span<StepObserver* const> observers = {},
                                const SimulationOptions& options = {});

}  // namespace gbm::pde
