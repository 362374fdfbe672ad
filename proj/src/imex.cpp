#include "gbm/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/errors.hpp"
#include "gbm/linear_solver.hpp"

namespace gbm::pde {

double max_stable_dt(const Params& p, double necrosis_cap) noexcept {
  return 0.5 / (p.rho + p.alpha + (p.beta1 + p.beta2 + p.delta) * necrosis_cap + 2.0 * p.gamma);
}

GridState imex_step(const GridState& s, double dt, const Params& p, const StepOptions& options,
                    StepStats* stats) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream os;
    os << "time step must be positive (got " << dt << ")";
    throw InvalidInput(os.str());
  }
  const Grid& grid = s.grid();
  const std::size_t n = grid.size();

  std::vector<double> rhs(n);
  ScalarField necrosis(grid);
  ScalarField vasculature(grid);
  double necrosis_max = -INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    const StateTriple here{s.tumor[k], s.necrosis[k], s.vasculature[k]};
    const StateTriple rate = kinetics::truncated_reaction(here, p);
    rhs[k] = here.tumor + dt * rate.tumor;
    necrosis[k] = here.necrosis + dt * rate.necrosis;
    vasculature[k] = here.vasculature + dt * rate.vasculature;
    necrosis_max = std::max(necrosis_max, necrosis[k]);
  }

  CgOptions cg;
  cg.tol = options.cg_tol;
  cg.max_iterations = options.cg_max_iterations;
  CgResult solved;
  try {
    solved = cg_solve(implicit_diffusion_operator(grid, dt * p.kappa0), rhs, cg);
  } catch (const SolverFailure& e) {
    throw SolverFailure(e.what(), e.residual(), s.t + dt);
  }
  if (stats) {
    stats->cg_iterations = solved.iterations;
    stats->cg_residual = solved.relative_residual;
    stats->necrosis_max = necrosis_max;
  }
  return GridState(s.t + dt, ScalarField(grid, std::move(solved.solution)), std::move(necrosis),
                   std::move(vasculature));
}

}  // namespace gbm::pde
