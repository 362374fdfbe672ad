#include "gbm/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/errors.hpp"

namespace gbm {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

double norm2(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

namespace {

void residual(const GridOperator& op, std::span<const double> b, std::span<const double> x,
              std::vector<double>& scratch, std::vector<double>& r) {
  op(x, scratch);
  for (std::size_t k = 0; k < b.size(); ++k) r[k] = b[k] - scratch[k];
}

}  // namespace

CgResult cg_solve(const GridOperator& op, std::span<const double> rhs, const CgOptions& options,
                  std::span<const double> initial_guess) {
  const std::size_t n = rhs.size();
  if (!(options.tol > 0.0)) throw InvalidInput("CG tolerance must be positive");
  if (!initial_guess.empty() && initial_guess.size() != n) {
    throw InvalidInput("CG initial guess size mismatch");
  }
  const std::size_t cap = options.max_iterations > 0 ? options.max_iterations : 10 * n;

  CgResult out;
  out.solution.assign(initial_guess.empty() ? rhs.begin() : initial_guess.begin(),
                      initial_guess.empty() ? rhs.end() : initial_guess.end());
  auto& x = out.solution;

  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return out;
  }

  std::vector<double> r(n), p(n), ap(n);
  residual(op, rhs, x, ap, r);
  double rr = dot(r, r);
  double rel = std::sqrt(rr) / bnorm;

  // The recurrence residual drifts from the true one; a converged recurrence is
  // confirmed against b - Ax and the iteration restarted from x if needed.
  std::size_t it = 0;
  while (true) {
    if (rel <= options.tol) {
      residual(op, rhs, x, ap, r);
      rr = dot(r, r);
      rel = std::sqrt(rr) / bnorm;
      if (rel <= options.tol) break;
    }
    if (it >= cap) {
      std::ostringstream os;
      os << "CG did not converge in " << cap << " iterations (relative residual " << rel << ")";
      throw SolverFailure(os.str(), rel);
    }
    std::copy(r.begin(), r.end(), p.begin());
    while (it < cap) {
      op(p, ap);
      const double pap = dot(p, ap);
      if (!(pap > 0.0)) {
        std::ostringstream os;
        os << "CG breakdown: operator not positive definite (p.Ap = " << pap << ")";
        throw SolverFailure(os.str(), rel);
      }
      const double alpha = rr / pap;
      for (std::size_t k = 0; k < n; ++k) {
        x[k] += alpha * p[k];
        r[k] -= alpha * ap[k];
      }
      const double rr_next = dot(r, r);
      ++it;
      rel = std::sqrt(rr_next) / bnorm;
      if (rel <= options.tol) {
        rr = rr_next;
        break;
      }
      const double beta = rr_next / rr;
      rr = rr_next;
      for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
    }
  }
  out.iterations = it;
  out.relative_residual = rel;
  return out;
}

ScalarField cg_solve(const GridOperator& op, const ScalarField& rhs, double tol) {
  CgOptions options;
  options.tol = tol;
  auto result = cg_solve(op, rhs.values(), options);
  return ScalarField(rhs.grid(), std::move(result.solution));
}

GridOperator implicit_diffusion_operator(const Grid& grid, double scale) {
  return [grid, scale](std::span<const double> x, std::span<double> y) {
    apply_laplacian(grid, x, y);
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] - scale * y[k];
  };
}

}  // namespace gbm
