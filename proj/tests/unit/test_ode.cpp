#include <gtest/gtest.h>

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <random>

#include "gbm/errors.hpp"
#include "gbm/ode.hpp"

namespace gbm::ode {
namespace {

using Vec = std::array<double, 3>;

// Adaptive Dormand-Prince reference for the raw kinetics.
StateTriple reference(const StateTriple& s0, double t_end, const Params& p, double tol) {
  namespace odeint = boost::numeric::odeint;
  Vec x{s0.tumor, s0.necrosis, s0.vasculature};
  auto rhs = [&p](const Vec& y, Vec& dy, double) {
    const StateTriple f = kinetics::reaction({y[0], y[1], y[2]}, p);
    dy = {f.tumor, f.necrosis, f.vasculature};
  };
  odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<Vec>>(tol, tol),
                             rhs, x, 0.0, t_end, 1e-3);
  return {x[0], x[1], x[2]};
}

TEST(Rk4Step, FixedPoints) {
  const Params p = Params::table2();
  EXPECT_EQ(rk4_step({0, 0, 0}, 0.37, p), (StateTriple{0, 0, 0}));
  EXPECT_EQ(rk4_step({0, 0.3, 0}, 0.01, p), (StateTriple{0, 0.3, 0}));
  EXPECT_EQ(rk4_step({0, 0, 0.8}, 1.0, p, Kinetics::Raw), (StateTriple{0, 0, 0.8}));
}

TEST(Rk4Step, MatchesAdaptiveReference) {
  const Params p = Params::table2();
  const StateTriple s{0.5, 0.0, 0.5};
  const StateTriple ref = reference(s, 0.01, p, 1e-8);
  EXPECT_LE(max_abs(rk4_step(s, 0.01, p) + (-1.0) * ref), 1e-6);
}

TEST(Rk4Step, RejectsNonFiniteOutput) {
  Params p = Params::table2();
  p.beta1 = 1e308;
  EXPECT_THROW(rk4_step({1.0, 1e10, 0.0}, 1e10, p, Kinetics::Raw), IntegrationFailure);
  try {
    rk4_step({1.0, 1e10, 0.0}, 1e10, p, Kinetics::Raw);
  } catch (const IntegrationFailure& e) {
    EXPECT_FALSE(std::isfinite(max_abs(e.state())));
  }
}

TEST(EulerStep, IsOneRateEvaluation) {
  const Params p = Params::table3();
  const StateTriple s{0.2, 0.1, 0.4};
  const StateTriple f = kinetics::truncated_reaction(s, p);
  EXPECT_EQ(euler_step(s, 0.05, p), s + 0.05 * f);
}

TEST(Integrate, RejectsBadInput) {
  const Params p = Params::table2();
  EXPECT_THROW(integrate({1.5, 0, 0}, 1.0, 0.01, p), InvalidInput);
  EXPECT_THROW(integrate({-0.1, 0, 0}, 1.0, 0.01, p), InvalidInput);
  EXPECT_THROW(integrate({0.1, 0, 0}, 1.0, 0.0, p), InvalidInput);
  EXPECT_THROW(integrate({0.1, 0, 0}, 0.001, 0.01, p), InvalidInput);
}

TEST(Integrate, TimesStrictlyIncreasingAndLandOnEnd) {
  const Params p = Params::table2();
  auto sol = integrate({0.2, 0.1, 0.3}, 1.005, 0.01, p);
  ASSERT_EQ(sol.times.size(), sol.states.size());
  for (std::size_t k = 1; k < sol.times.size(); ++k) ASSERT_GT(sol.times[k], sol.times[k - 1]);
  EXPECT_DOUBLE_EQ(sol.times.back(), 1.005);
  EXPECT_EQ(sol.times.size(), 102u);

  IntegrateOptions thin;
  thin.record_every = 10;
  auto coarse = integrate({0.2, 0.1, 0.3}, 1.005, 0.01, p, thin);
  EXPECT_EQ(coarse.states.back(), sol.states.back());
  EXPECT_LT(coarse.times.size(), sol.times.size());
}

TEST(Integrate, NoTumorTransfersVasculatureToNecrosis) {
  const Params p = Params::table2();
  auto sol = integrate({0.0, 0.2, 0.5}, 2000.0, 0.05, p);
  for (std::size_t k = 1; k < sol.states.size(); ++k) {
    ASSERT_GE(sol.states[k].necrosis, sol.states[k - 1].necrosis);
    ASSERT_LE(sol.states[k].vasculature, sol.states[k - 1].vasculature);
    ASSERT_EQ(sol.states[k].tumor, 0.0);
  }
  EXPECT_NEAR(sol.states.back().necrosis, 0.7, 1e-6);
  EXPECT_NEAR(sol.states.back().vasculature, 0.0, 1e-6);
}

TEST(Integrate, NoVasculatureStaysAvascular) {
  const Params p = Params::table2();
  auto sol = integrate({0.3, 0.1, 0.0}, 1000.0, 0.05, p);
  for (std::size_t k = 1; k < sol.states.size(); ++k) {
    ASSERT_EQ(sol.states[k].vasculature, 0.0);
    ASSERT_LE(sol.states[k].tumor, sol.states[k - 1].tumor);
  }
  EXPECT_LT(sol.states.back().tumor, 1e-6);
  EXPECT_NEAR(sol.states.back().necrosis, 0.4, 1e-6);
}

TEST(Integrate, SumAtCapacityIsInvariant) {
  for (const Params& p : {Params::table2(), Params::table3()}) {
    auto sol = integrate({0.4, 0.1, 0.5}, 500.0, 0.01, p);
    for (const auto& s : sol.states) ASSERT_NEAR(s.total(), p.K, 1e-9);
  }
}

TEST(Integrate, SumBelowCapacityIsNondecreasing) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Params p = trial % 2 ? Params::table3() : Params::table2();
    StateTriple s0{u(rng), u(rng), u(rng)};
    s0 = (0.95 * u(rng) / s0.total()) * s0;
    auto sol = integrate(s0, 200.0, 0.01, p);
    for (std::size_t k = 1; k < sol.states.size(); ++k) {
      ASSERT_GE(sol.states[k].total(), sol.states[k - 1].total() - 1e-15);
      ASSERT_LE(sol.states[k].total(), p.K + 1e-8);
      ASSERT_GE(sol.states[k].necrosis - sol.states[k - 1].necrosis, -1e-10);
    }
  }
}

TEST(Integrate, Rk4ObservedOrder) {
  const Params p = Params::table2();
  const StateTriple s0{0.4, 0.1, 0.3};
  const StateTriple ref = reference(s0, 10.0, p, 1e-14);
  IntegrateOptions opt;
  opt.kinetics = Kinetics::Raw;
  std::vector<double> err;
  for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
    err.push_back(max_abs(integrate(s0, 10.0, dt, p, opt).states.back() + (-1.0) * ref));
  }
  // least-squares slope of log err against log dt
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < err.size(); ++k) {
    const double x = std::log(0.1 / std::pow(2.0, static_cast<double>(k)));
    const double y = std::log(err[k]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double n = static_cast<double>(err.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_GE(slope, 3.8) << err[0] << " " << err[3];
}

TEST(ClassifyEquilibrium, Examples) {
  const Params p = Params::table2();
  EXPECT_EQ(classify_equilibrium({0, 0, 0}, p).tag, EquilibriumTag::P1);
  EXPECT_EQ(classify_equilibrium({0, 0.3, 0}, p).tag, EquilibriumTag::P2);
  EXPECT_EQ(classify_equilibrium({0, 0, 0.4}, p).tag, EquilibriumTag::P3);
  const auto c = classify_equilibrium({0.1, 0, 0}, p);
  EXPECT_EQ(c.tag, EquilibriumTag::NotEquilibrium);
  EXPECT_NEAR(c.residual, p.alpha * 0.1, 1e-15);
  EXPECT_STREQ(to_string(EquilibriumTag::P2), "P2");
}

TEST(OmegaLimit, Examples) {
  const Params p = Params::table2();
  {
    const StateTriple s0{0.2, 0.1, 0.3};
    auto w = omega_limit_estimate(s0, p, 20000.0, 0.05);
    EXPECT_TRUE(w.converged);
    EXPECT_EQ(classify_equilibrium(w.state, p, 1e-6).tag, EquilibriumTag::P2);
    EXPECT_GE(w.state.necrosis, s0.total() - 1e-9);
  }
  {
    auto w = omega_limit_estimate({0, 0, 0.6}, p, 100.0);
    EXPECT_TRUE(w.converged);
    EXPECT_EQ(w.state, (StateTriple{0, 0, 0.6}));
  }
  {
    auto w = omega_limit_estimate({0.3, 0, 0}, p, 2000.0, 0.05);
    EXPECT_NEAR(w.state.tumor, 0.0, 1e-3);
    EXPECT_NEAR(w.state.necrosis, 0.3, 1e-3);
    EXPECT_EQ(w.state.vasculature, 0.0);
  }
  {
    auto w = omega_limit_estimate({0.3, 0.1, 0.2}, p, 1.0);
    EXPECT_FALSE(w.converged);
  }
  EXPECT_THROW(omega_limit_estimate({0.6, 0.3, 0.3}, p, 10.0), InvalidInput);
}

}  // namespace
}  // namespace gbm::ode
