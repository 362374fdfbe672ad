#include "gbm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/errors.hpp"

namespace gbm::ode {

namespace {

StateTriple rates(const StateTriple& s, const Params& p, Kinetics kinetics) {
  return kinetics == Kinetics::Truncated ? kinetics::truncated_reaction(s, p)
                                         : kinetics::reaction(s, p);
}

bool finite(const StateTriple& s) {
  return std::isfinite(s.tumor) && std::isfinite(s.necrosis) && std::isfinite(s.vasculature);
}

void require_finite(const StateTriple& s, double t) {
  if (!finite(s)) throw IntegrationFailure("non-finite state in ODE integration", s, t);
}

void require_positive_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream os;
    os << "time step must be positive (got " << dt << ")";
    throw InvalidInput(os.str());
  }
}

}  // namespace

const char* to_string(EquilibriumTag tag) noexcept {
  switch (tag) {
    case EquilibriumTag::P1: return "P1";
    case EquilibriumTag::P2: return "P2";
    case EquilibriumTag::P3: return "P3";
    case EquilibriumTag::NotEquilibrium: return "NotEquilibrium";
  }
  return "?";
}

StateTriple rk4_step(const StateTriple& s, double dt, const Params& p, Kinetics kinetics) {
  require_positive_step(dt);
  const StateTriple k1 = rates(s, p, kinetics);
  const StateTriple k2 = rates(s + (0.5 * dt) * k1, p, kinetics);
  const StateTriple k3 = rates(s + (0.5 * dt) * k2, p, kinetics);
  const StateTriple k4 = rates(s + dt * k3, p, kinetics);
  const StateTriple next = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  require_finite(next, 0.0);
  return next;
}

StateTriple euler_step(const StateTriple& s, double dt, const Params& p, Kinetics kinetics) {
  require_positive_step(dt);
  const StateTriple next = s + dt * rates(s, p, kinetics);
  require_finite(next, 0.0);
  return next;
}

OdeSolution integrate(const StateTriple& s0, double t_end, double dt, const Params& p,
                      const IntegrateOptions& options) {
  p.validate();
  require_positive_step(dt);
  if (!(t_end >= dt)) {
    std::ostringstream os;
    os << "t_end must be at least dt (t_end=" << t_end << ", dt=" << dt << ")";
    throw InvalidInput(os.str());
  }
  auto in_box = [&p](double x) { return x >= 0.0 && x <= p.K; };
  if (!in_box(s0.tumor) || !in_box(s0.necrosis) || !in_box(s0.vasculature)) {
    std::ostringstream os;
    os << "initial state (" << s0.tumor << ", " << s0.necrosis << ", " << s0.vasculature
       << ") outside [0, K]^3 with K=" << p.K;
    throw InvalidInput(os.str());
  }

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const std::size_t every = std::max<std::size_t>(1, options.record_every);

  OdeSolution out;
  out.method = options.method;
  out.dt = dt;
  out.times.reserve(steps / every + 2);
  out.states.reserve(steps / every + 2);
  out.times.push_back(0.0);
  out.states.push_back(s0);

  StateTriple s = s0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_prev = static_cast<double>(n - 1) * dt;
    const double h = std::min(dt, t_end - t_prev);
    try {
      s = options.method == Method::Rk4 ? rk4_step(s, h, p, options.kinetics)
                                        : euler_step(s, h, p, options.kinetics);
    } catch (const IntegrationFailure& e) {
      throw IntegrationFailure(e.what(), e.state(), t_prev + h);
    }
    if (n % every == 0 || n == steps) {
      out.times.push_back(n == steps ? t_end : static_cast<double>(n) * dt);
      out.states.push_back(s);
    }
  }
  return out;
}

EquilibriumClass classify_equilibrium(const StateTriple& s, const Params& p, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("classification tolerance must be positive");
  const StateTriple r = kinetics::reaction(s, p);
  EquilibriumClass out;
  out.residual = max_abs(r);

  const bool t0 = std::abs(s.tumor) <= tol;
  const bool n0 = std::abs(s.necrosis) <= tol;
  const bool phi0 = std::abs(s.vasculature) <= tol;
  if (t0 && n0 && phi0) {
    out.tag = EquilibriumTag::P1;
  } else if (t0 && phi0 && s.necrosis > tol) {
    out.tag = EquilibriumTag::P2;
  } else if (t0 && n0 && s.vasculature > tol) {
    out.tag = EquilibriumTag::P3;
  } else {
    out.tag = EquilibriumTag::NotEquilibrium;
  }
  return out;
}

OmegaLimit omega_limit_estimate(const StateTriple& s0, const Params& p, double horizon,
                                double dt) {
  p.validate();
  require_positive_step(dt);
  if (!(s0.tumor >= 0.0 && s0.necrosis >= 0.0 && s0.vasculature >= 0.0) ||
      s0.total() > p.K * (1.0 + 1e-12)) {
    throw InvalidInput("omega-limit estimate needs a nonnegative initial state with S0 <= K");
  }

  OmegaLimit out;
  if (!(horizon >= dt)) {
    out.state = s0;
    out.rate_norm = max_abs(kinetics::reaction(s0, p));
    return out;
  }

  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  const auto tail_start = static_cast<std::size_t>(0.9 * static_cast<double>(steps));

  // Componentwise envelope of the tail; the excursion is measured against the final state.
  StateTriple s = s0;
  StateTriple lo{}, hi{};
  bool in_tail = false;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double h = std::min(dt, horizon - static_cast<double>(n - 1) * dt);
    s = rk4_step(s, h, p, Kinetics::Truncated);
    if (n < tail_start) continue;
    if (!in_tail) {
      lo = hi = s;
      in_tail = true;
      continue;
    }
    lo = {std::min(lo.tumor, s.tumor), std::min(lo.necrosis, s.necrosis),
          std::min(lo.vasculature, s.vasculature)};
    hi = {std::max(hi.tumor, s.tumor), std::max(hi.necrosis, s.necrosis),
          std::max(hi.vasculature, s.vasculature)};
  }

  out.state = s;
  out.rate_norm = max_abs(kinetics::reaction(s, p));
  out.tail_motion = std::max({s.tumor - lo.tumor, hi.tumor - s.tumor, s.necrosis - lo.necrosis,
                              hi.necrosis - s.necrosis, s.vasculature - lo.vasculature,
                              hi.vasculature - s.vasculature});
  out.converged = out.rate_norm <= 1e-8 && out.tail_motion <= 1e-6;
  return out;
}

}  // namespace gbm::ode
