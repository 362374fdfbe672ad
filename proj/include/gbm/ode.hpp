#pragma once

#include <cstddef>
#include <vector>

#include "gbm/kinetics.hpp"

namespace gbm::ode {

enum class Method { Rk4, Euler };

/// Which reaction terms drive the integrator.
enum class Kinetics { Truncated, Raw };

struct OdeSolution {
  std::vector<double> times;
  std::vector<StateTriple> states;
  Method method = Method::Rk4;
  double dt = 0.0;
};

enum class EquilibriumTag { P1, P2, P3, NotEquilibrium };

const char* to_string(EquilibriumTag tag) noexcept;

struct EquilibriumClass {
  EquilibriumTag tag = EquilibriumTag::NotEquilibrium;
  double residual = 0.0;  ///< max |f_i| at the classified state
};

inline constexpr double kDefaultDt = 0.01;
inline constexpr double kDefaultEquilibriumTol = 1e-9;

/// Classical fourth-order Runge-Kutta step. Throws IntegrationFailure on non-finite output.
StateTriple rk4_step(const StateTriple& s, double dt, const Params& p,
                     Kinetics kinetics = Kinetics::Truncated);

/// Explicit Euler step; the reaction half of the IMEX scheme uses the same update.
StateTriple euler_step(const StateTriple& s, double dt, const Params& p,
                       Kinetics kinetics = Kinetics::Truncated);

struct IntegrateOptions {
  Method method = Method::Rk4;
  Kinetics kinetics = Kinetics::Truncated;
  /// Keep every n-th step in the returned trajectory (the final state is always kept).
  std::size_t record_every = 1;
};

/// Integrate the diffusion-free system from s0 over [0, t_end] with a fixed step.
///
/// The last step is shortened when t_end is not a multiple of dt.
/// Throws InvalidInput unless 0 <= s0 <= K componentwise, dt > 0 and t_end >= dt.
OdeSolution integrate(const StateTriple& s0, double t_end, double dt, const Params& p,
                      const IntegrateOptions& options = {});

/// Tag a state against the equilibrium families
///   P1 = {(0,0,0)}, P2 = {(0,N,0), N > 0}, P3 = {(0,0,Phi), Phi > 0}
/// using an absolute component tolerance.
EquilibriumClass classify_equilibrium(const StateTriple& s, const Params& p,
                                      double tol = kDefaultEquilibriumTol);

struct OmegaLimit {
  StateTriple state;
  bool converged = false;
  double rate_norm = 0.0;    ///< max |f_i| at the final state
  double tail_motion = 0.0;  ///< max-norm excursion over the last tenth of the horizon
};

/// Long-time limit estimate: integrate to the horizon and report whether the
/// trajectory settled (|f| <= 1e-8 and the last tenth moved <= 1e-6).
/// A horizon that is too short leaves the flag unset rather than throwing.
OmegaLimit omega_limit_estimate(const StateTriple& s0, const Params& p, double horizon,
                                double dt = kDefaultDt);

}  // namespace gbm::ode
