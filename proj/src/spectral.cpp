#include "gbm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/errors.hpp"
#include "gbm/linear_solver.hpp"

namespace gbm::spectral {

namespace {

/// y = (-Lap + diag(b) - shift) x
GridOperator schrodinger_operator(const ScalarField& b, double shift) {
  return [&b, shift](std::span<const double> x, std::span<double> y) {
    apply_laplacian(b.grid(), x, y);
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = -y[k] + (b[k] - shift) * x[k];
  };
}

}  // namespace

EigenResult lambda1(const ScalarField& potential, const EigenOptions& options) {
  if (!potential.all_finite()) throw InvalidInput("eigenvalue potential must be finite");
  if (!(options.tol > 0.0)) throw InvalidInput("eigenvalue tolerance must be positive");

  const std::size_t n = potential.size();
  const double shift = potential.min() - 1.0;
  const GridOperator shifted = schrodinger_operator(potential, shift);
  const GridOperator unshifted = schrodinger_operator(potential, 0.0);

  CgOptions inner;
  inner.tol = std::max(1e-14, 1e-2 * options.tol);

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> av(n);
  unshifted(v, av);
  double lambda = dot(v, av);
  double residual = INFINITY;

  EigenResult out;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    CgResult w = cg_solve(shifted, v, inner, v);
    const double wn = norm2(w.solution);
    for (std::size_t k = 0; k < n; ++k) v[k] = w.solution[k] / wn;

    unshifted(v, av);
    const double next = dot(v, av);
    double r2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = av[k] - next * v[k];
      r2 += r * r;
    }
    residual = std::sqrt(r2);
    const double change = std::abs(next - lambda);
    lambda = next;
    if (change <= options.tol && residual <= options.tol * (1.0 + std::abs(lambda))) {
      const double vmax = *std::max_element(v.begin(), v.end());
      for (double& x : v) x /= vmax;
      out.lambda1 = lambda;
      out.eigenfield = ScalarField(potential.grid(), std::move(v));
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  std::ostringstream os;
  os << "eigenvalue iteration did not converge in " << options.max_iterations
     << " iterations (residual " << residual << ")";
  throw SolverFailure(os.str(), residual);
}

RhoCondition check_rho_condition(const Params& p, const ScalarField& n0,
                                 const EigenOptions& options) {
  if (n0.min() < 0.0) throw InvalidInput("initial necrosis must be nonnegative");
  ScalarField b(n0.grid());
  for (std::size_t k = 0; k < n0.size(); ++k) b[k] = p.beta1 * n0[k];
  const EigenResult eig = lambda1(b, options);
  RhoCondition out;
  out.lambda1 = eig.lambda1;
  out.margin = eig.lambda1 - p.rho;
  out.holds = p.rho < eig.lambda1;
  return out;
}

}  // namespace gbm::spectral
