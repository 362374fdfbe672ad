#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbm/grid.hpp"
#include "gbm/kinetics.hpp"
#include "gbm/report.hpp"
#include "gbm/spectral.hpp"

namespace gbm::analysis {

/// amplitude * exp(-rate (t - t_start)).
struct DecayEnvelope {
  double amplitude = 0.0;
  double rate = 0.0;
  double t_start = 0.0;

  double operator()(double t) const { return amplitude * std::exp(-rate * (t - t_start)); }

  friend bool operator==(const DecayEnvelope&, const DecayEnvelope&) = default;
};

/// Envelopes for the sup norms of tumor and vasculature.
struct EnvelopePair {
  DecayEnvelope tumor;
  DecayEnvelope vasculature;
};

inline constexpr double kDefaultSlack = 1e-3;

/// Cells where T or Phi leave [-tol, K + tol] or N leaves [-tol, C(t_final) + tol].
std::vector<Violation> apriori_bounds_monitor(const GridState& s, const Params& p, double t_final,
                                              double tol);

/// Envelopes valid when delta >= gamma / K (vasculature destruction dominates).
/// Uses mu = 0.5 min(beta1, beta2) n0min. Returns nullopt when delta < gamma / K.
std::optional<EnvelopePair> envelope_for_lemma43(const Params& p, double n0min, double phi0max,
                                                 double t0max);

struct Lemma44Envelopes {
  EnvelopePair envelopes;
  double lambda1 = 0.0;
};

/// Envelopes valid when rho < lambda1(-Lap + beta1 n0). The vasculature envelope
/// starts at t_star with rate mu* = 0.5 beta2 min(n0). Returns nullopt when the
/// eigenvalue gate fails.
std::optional<Lemma44Envelopes> envelope_for_lemma44(const Params& p, const ScalarField& n0,
                                                     double t0max, double phi_at_tstar,
                                                     double t_star,
                                                     const spectral::EigenOptions& eig = {});

/// First sampled time where (gamma / K) ||T||_inf <= 0.5 beta2 n0min, i.e. where the
/// vasculature rate is dominated by -mu* Phi. nullopt when never reached.
std::optional<std::size_t> select_t_star(const TimeSeries& tumor_max, const Params& p,
                                         double n0min);

/// Envelopes valid when N0 >= K - eps everywhere; rates
///   tumor: beta1 (K - eps) - rho eps / K,   vasculature: beta2 (K - eps) - gamma eps / K.
/// Returns nullopt when either rate is not positive.
std::optional<EnvelopePair> envelope_for_lemma45(const Params& p, double eps, double t0max,
                                                 double phi0max);

/// Pass iff value(t) <= env(t) (1 + slack) at every sample with t >= env.t_start.
Verdict check_envelope(const TimeSeries& series, const DecayEnvelope& env, double slack,
                       std::string monitor = "envelope");

/// Pass iff every monitored cell's series falls below `threshold` by `horizon` and
/// is non-increasing over the final tenth of its samples.
Verdict phi_vanishing_check(std::span<const TimeSeries> cells, double threshold, double horizon);

/// Final-decade behaviour of a norm: last value <= fraction * first value and
/// non-increasing over the last tenth of the run.
Verdict decay_check(const TimeSeries& series, double fraction, std::string monitor);

/// Necrosis stays bounded: max finite and the increase over the last tenth <= tol.
Verdict necrosis_bounded_check(const TimeSeries& necrosis_max, double tol = 1e-4);

}  // namespace gbm::analysis
