#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gbm/grid.hpp"

namespace gbm {

/// Matrix-free operator y = A x on grid-sized vectors.
using GridOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct CgOptions {
  double tol = 1e-10;            ///< relative residual target ||b - Ax|| / ||b||
  std::size_t max_iterations = 0;  ///< 0 selects 10 * n
};

struct CgResult {
  std::vector<double> solution;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Conjugate gradients for a symmetric positive definite operator.
///
/// Starts from `initial_guess` when given (otherwise from b). Reductions are
/// evaluated in a fixed order so results are bitwise reproducible.
/// Throws SolverFailure carrying the last residual when the iteration cap is hit.
CgResult cg_solve(const GridOperator& op, std::span<const double> rhs, const CgOptions& options = {},
                  std::span<const double> initial_guess = {});

ScalarField cg_solve(const GridOperator& op, const ScalarField& rhs, double tol);

/// x -> (I - scale * Laplacian) x, SPD for scale >= 0.
GridOperator implicit_diffusion_operator(const Grid& grid, double scale);

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm2(std::span<const double> a) noexcept;

}  // namespace gbm
