#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "gbm/errors.hpp"
#include "gbm/linear_solver.hpp"

namespace gbm {
namespace {

Eigen::MatrixXd assemble(const GridOperator& op, std::size_t n) {
  Eigen::MatrixXd A(n, n);
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = 1.0;
    op(e, col);
    for (std::size_t r = 0; r < n; ++r) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = col[r];
    e[k] = 0.0;
  }
  return A;
}

TEST(Cg, IdentityReturnsRhs) {
  auto identity = [](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), y.begin());
  };
  const std::vector<double> b{1.0, -2.0, 3.5, 0.25};
  auto r = cg_solve(identity, b);
  EXPECT_EQ(r.solution, b);
  EXPECT_EQ(r.iterations, 0u);
}

TEST(Cg, ZeroRhsGivesZero) {
  const Grid g(5, 5, 0, 1, 0, 1);
  auto r = cg_solve(implicit_diffusion_operator(g, 0.3), std::vector<double>(25, 0.0));
  for (double v : r.solution) EXPECT_EQ(v, 0.0);
}

TEST(Cg, ConstantRhsIsFixedByDiffusionOperator) {
  const Grid g(8, 8, -2, 2, -2, 2);
  const ScalarField b(g, 0.7);
  const ScalarField x = cg_solve(implicit_diffusion_operator(g, 0.5), b, 1e-10);
  for (double v : x.values()) ASSERT_EQ(v, 0.7);
}

TEST(Cg, MatchesDenseSolveOnDiffusionOperator) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid g(8, 8, -2, 2, -2, 2);
  for (double scale : {0.01, 0.1, 1.0, 10.0}) {
    const auto op = implicit_diffusion_operator(g, scale);
    std::vector<double> b(g.size());
    for (auto& v : b) v = u(rng);
    const auto r = cg_solve(op, b);
    const Eigen::MatrixXd A = assemble(op, g.size());
    const Eigen::VectorXd x = A.partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), 64));
    for (std::size_t k = 0; k < g.size(); ++k) ASSERT_NEAR(r.solution[k], x(static_cast<Eigen::Index>(k)), 1e-8);
    EXPECT_LE(r.relative_residual, 1e-10);
  }
}

TEST(Cg, MatchesDenseSolveOnRandomSpdMatrix) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Eigen::Index n = 64;
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = u(rng);
  const Eigen::MatrixXd A = M.transpose() * M + Eigen::MatrixXd::Identity(n, n);
  auto op = [&A](std::span<const double> x, std::span<double> y) {
    Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())) =
        A * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  };
  std::vector<double> b(static_cast<std::size_t>(n));
  for (auto& v : b) v = u(rng);
  CgOptions opt;
  opt.tol = 1e-12;
  const auto r = cg_solve(op, b, opt);
  const Eigen::VectorXd x = A.llt().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n));
  for (Eigen::Index k = 0; k < n; ++k) ASSERT_NEAR(r.solution[static_cast<std::size_t>(k)], x(k), 1e-8);
}

TEST(Cg, DeterministicForFixedInput) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Grid g(16, 16, 0, 1, 0, 1);
  std::vector<double> b(g.size());
  for (auto& v : b) v = u(rng);
  const auto op = implicit_diffusion_operator(g, 0.02);
  EXPECT_EQ(cg_solve(op, b).solution, cg_solve(op, b).solution);
}

TEST(Cg, IterationCapRaisesSolverFailure) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid g(16, 16, 0, 1, 0, 1);
  std::vector<double> b(g.size());
  for (auto& v : b) v = u(rng);
  CgOptions opt;
  opt.max_iterations = 2;
  try {
    cg_solve(implicit_diffusion_operator(g, 10.0), b, opt);
    FAIL() << "expected SolverFailure";
  } catch (const SolverFailure& e) {
    EXPECT_GT(e.residual(), 1e-10);
  }
}

TEST(Cg, RejectsIndefiniteOperator) {
  auto negative = [](std::span<const double> x, std::span<double> y) {
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = -x[k] * (1.0 + static_cast<double>(k));
  };
  EXPECT_THROW(cg_solve(negative, std::vector<double>{1.0, 1.0, 1.0}), SolverFailure);
}

}  // namespace
}  // namespace gbm
