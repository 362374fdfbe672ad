#pragma once

#include "gbm/params.hpp"

namespace gbm {

/// Pointwise (tumor, necrosis, vasculature) densities.
struct StateTriple {
  double tumor = 0.0;
  double necrosis = 0.0;
  double vasculature = 0.0;

  double total() const noexcept { return tumor + necrosis + vasculature; }

  friend bool operator==(const StateTriple&, const StateTriple&) = default;
};

inline StateTriple operator+(StateTriple a, const StateTriple& b) noexcept {
  return {a.tumor + b.tumor, a.necrosis + b.necrosis, a.vasculature + b.vasculature};
}
inline StateTriple operator*(double s, StateTriple a) noexcept {
  return {s * a.tumor, s * a.necrosis, s * a.vasculature};
}

double max_abs(const StateTriple& s) noexcept;

enum class Component { Tumor = 1, Necrosis = 2, Vasculature = 3 };

namespace kinetics {

inline double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }

/// min(K, max(x, 0)).
inline double clamp_to_capacity(double x, double K) noexcept {
  return x < 0.0 ? 0.0 : (x > K ? K : x);
}

/// Vasculature volume fraction phi+ / (phi+ + t+), taken as 0 at the origin.
double vascular_fraction(double vasculature, double tumor) noexcept;

/// Hypoxic tumor mass t+ * sqrt(1 - P^2). Globally Lipschitz, 0 at the origin.
///
/// Evaluated as t * sqrt(t (t + 2 phi)) / (t + phi), which avoids the
/// cancellation in 1 - P^2 when tumor is scarce relative to vasculature.
double hypoxic_tumor(double vasculature, double tumor) noexcept;

/// Vascularized tumor mass t+ * P. Globally Lipschitz, 0 at the origin.
double vascularized_tumor(double vasculature, double tumor) noexcept;

/// Tumor reaction rate: proliferation on vascularized tumor, hypoxic death, necrosis contact.
double tumor_rate(const StateTriple& s, const Params& p) noexcept;
/// Necrosis reaction rate; nonnegative on nonnegative states.
double necrosis_rate(const StateTriple& s, const Params& p) noexcept;
/// Vasculature reaction rate; nonpositive once the total density reaches K.
double vasculature_rate(const StateTriple& s, const Params& p) noexcept;

/// All three rates at once.
StateTriple reaction(const StateTriple& s, const Params& p) noexcept;

/// Rates of the truncated system: the tumor rate at (T+, N+, Phi+), the
/// necrosis and vasculature rates at (min(K, T+), N+, Phi+).
StateTriple truncated_reaction(const StateTriple& s, const Params& p) noexcept;
double truncated_rate(Component c, const StateTriple& s, const Params& p) noexcept;

/// Rate of change of the total density T + N + Phi.
double sum_rate(const StateTriple& s, const Params& p) noexcept;

}  // namespace kinetics
}  // namespace gbm

namespace gbm::kinetics {

/// Pointwise a priori necrosis cap on [0, t_final] for data in [0, K]:
///   N <= e^{c2 t_final} (c1 / c2 + K),  c1 = alpha K + delta K^2,  c2 = (beta1 + beta2) K.
/// Grows exponentially with the horizon.
double necrosis_bound(const Params& p, double t_final) noexcept;

}  // namespace gbm::kinetics
