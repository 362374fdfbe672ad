#include "gbm/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/errors.hpp"

namespace gbm {

void RunReport::add_violation(Violation v) {
  auto pos = std::upper_bound(violations.begin(), violations.end(), v.t,
                              [](double t, const Violation& x) { return t < x.t; });
  violations.insert(pos, std::move(v));
}

TimeSeries RunReport::extract(Norm which) const {
  TimeSeries out;
  out.t.reserve(series.size());
  out.value.reserve(series.size());
  for (const auto& s : series) {
    double v = 0.0;
    switch (which) {
      case Norm::TumorMax: v = s.tumor_max; break;
      case Norm::TumorMin: v = s.tumor_min; break;
      case Norm::NecrosisMax: v = s.necrosis_max; break;
      case Norm::VasculatureMax: v = s.vasculature_max; break;
      case Norm::MassTumor: v = s.mass_tumor; break;
      case Norm::MassNecrosis: v = s.mass_necrosis; break;
      case Norm::MassVasculature: v = s.mass_vasculature; break;
    }
    out.push(s.t, v);
  }
  return out;
}

bool RunReport::all_pass() const noexcept {
  return violations.empty() &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace pde {

NormSample sample_norms(const GridState& s) {
  NormSample out;
  out.t = s.t;
  out.tumor_max = s.tumor.max();
  out.tumor_min = s.tumor.min();
  out.necrosis_max = s.necrosis.max();
  out.necrosis_min = s.necrosis.min();
  out.vasculature_max = s.vasculature.max();
  out.vasculature_min = s.vasculature.min();
  out.mass_tumor = s.tumor.integral();
  out.mass_necrosis = s.necrosis.integral();
  out.mass_vasculature = s.vasculature.integral();
  return out;
}

namespace {

void check_initial(const GridState& s, const Params& p) {
  std::ostringstream os;
  auto check = [&](const char* name, const ScalarField& f) {
    if (!f.all_finite()) {
      os << name << " has non-finite values; ";
      return;
    }
    if (f.min() < 0.0 || f.max() > p.K) {
      os << name << " outside [0, K] (min " << f.min() << ", max " << f.max() << "); ";
    }
  };
  check("T0", s.tumor);
  check("N0", s.necrosis);
  check("Phi0", s.vasculature);
  if (!os.str().empty()) throw InvalidInput("initial data violate 0 <= T0, N0, Phi0 <= K: " + os.str());
}

void check_dt(double dt, const Params& p, double necrosis_max, double t) {
  const double cap = max_stable_dt(p, std::max(p.K, necrosis_max));
  if (dt > cap) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the reaction step cap " << cap << " at t = " << t
       << " (max N = " << necrosis_max << ")";
    throw InvalidInput(os.str());
  }
}

}  // namespace

SimulationResult run_simulation(const GridState& initial, double t_end, double dt,
                                const Params& p, std::span<StepObserver* const> observers,
                                const SimulationOptions& options) {
  p.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("time step must be positive");
  if (!(t_end > initial.t)) throw InvalidInput("t_end must exceed the initial time");
  check_initial(initial, p);
  if (options.enforce_dt_cap) check_dt(dt, p, initial.necrosis.max(), initial.t);

  SimulationResult result;
  RunReport& report = result.report;
  const double span = t_end - initial.t;
  const auto steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
  const std::size_t sample_every =
      options.sample_interval > 0.0
          ? std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.sample_interval / dt)))
          : 1;

  GridState current = initial;
  report.series.reserve(steps / sample_every + 2);
  report.series.push_back(sample_norms(current));
  for (auto* obs : observers) obs->on_start(current, report);

  StepStats stats;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_prev = initial.t + static_cast<double>(n - 1) * dt;
    const double h = n == steps ? t_end - t_prev : dt;
    GridState next = imex_step(current, h, p, options.step, &stats);
    next.t = n == steps ? t_end : initial.t + static_cast<double>(n) * dt;
    if (!next.tumor.all_finite() || !next.necrosis.all_finite() || !next.vasculature.all_finite()) {
      std::ostringstream os;
      os << "non-finite field at t = " << next.t;
      throw IntegrationFailure(os.str(), StateTriple{}, next.t);
    }
    if (options.enforce_dt_cap) check_dt(dt, p, stats.necrosis_max, next.t);
    for (auto* obs : observers) obs->on_step(current, next, report);
    current = std::move(next);
    if (n % sample_every == 0 || n == steps) report.series.push_back(sample_norms(current));
  }
  for (auto* obs : observers) obs->on_finish(current, report);
  result.final_state = std::move(current);
  return result;
}

}  // namespace pde
}  // namespace gbm
