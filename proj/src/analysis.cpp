#include "gbm/analysis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "gbm/errors.hpp"

namespace gbm::analysis {

namespace {

/// Index of the first sample inside the final tenth of [t_first, t_last].
std::size_t tail_begin(const TimeSeries& s) {
  const double t_cut = s.t.front() + 0.9 * (s.t.back() - s.t.front());
  return static_cast<std::size_t>(
      std::lower_bound(s.t.begin(), s.t.end(), t_cut) - s.t.begin());
}

bool non_increasing_from(const TimeSeries& s, std::size_t begin) {
  for (std::size_t k = begin + 1; k < s.size(); ++k) {
    if (s.value[k] > s.value[k - 1]) return false;
  }
  return true;
}

}  // namespace

std::vector<Violation> apriori_bounds_monitor(const GridState& s, const Params& p, double t_final,
                                              double tol) {
  const double necrosis_cap = kinetics::necrosis_bound(p, t_final);
  std::vector<Violation> out;
  auto scan = [&](const char* name, const ScalarField& f, double upper) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double v = f[k];
      double excess = 0.0;
      if (v < -tol) excess = -v;
      else if (v > upper + tol) excess = v - upper;
      else continue;
      std::ostringstream os;
      os << name << " = " << v << " at cell " << (k % f.grid().nx) << "," << (k / f.grid().nx);
      out.push_back({s.t, "apriori_bounds", excess, os.str()});
    }
  };
  scan("T", s.tumor, p.K);
  scan("N", s.necrosis, necrosis_cap);
  scan("Phi", s.vasculature, p.K);
  return out;
}

std::optional<EnvelopePair> envelope_for_lemma43(const Params& p, double n0min, double phi0max,
                                                 double t0max) {
  if (!(n0min > 0.0)) throw InvalidInput("lemma43 envelope needs a positive minimum of N0");
  if (p.delta < p.gamma / p.K) return std::nullopt;
  const double mu = 0.5 * std::min(p.beta1, p.beta2) * n0min;
  const double amplitude = std::max(t0max, p.rho * phi0max / (p.beta1 * n0min - mu));
  return EnvelopePair{{amplitude, mu, 0.0}, {phi0max, p.beta2 * n0min, 0.0}};
}

std::optional<Lemma44Envelopes> envelope_for_lemma44(const Params& p, const ScalarField& n0,
                                                     double t0max, double phi_at_tstar,
                                                     double t_star,
                                                     const spectral::EigenOptions& eig) {
  if (!(n0.min() > 0.0)) throw InvalidInput("lemma44 envelope needs N0 > 0 everywhere");
  const spectral::RhoCondition gate = spectral::check_rho_condition(p, n0, eig);
  if (!gate.holds) return std::nullopt;
  const double mu_star = 0.5 * p.beta2 * n0.min();
  Lemma44Envelopes out;
  out.lambda1 = gate.lambda1;
  out.envelopes.tumor = {t0max, gate.margin, 0.0};
  out.envelopes.vasculature = {phi_at_tstar, mu_star, t_star};
  return out;
}

std::optional<std::size_t> select_t_star(const TimeSeries& tumor_max, const Params& p,
                                         double n0min) {
  const double target = 0.5 * p.beta2 * n0min;
  for (std::size_t k = 0; k < tumor_max.size(); ++k) {
    if (p.gamma / p.K * tumor_max.value[k] <= target) return k;
  }
  return std::nullopt;
}

std::optional<EnvelopePair> envelope_for_lemma45(const Params& p, double eps, double t0max,
                                                 double phi0max) {
  if (!(eps > 0.0 && eps < p.K)) throw InvalidInput("lemma45 envelope needs 0 < eps < K");
  const double tumor_rate = p.beta1 * (p.K - eps) - p.rho * eps / p.K;
  const double vasculature_rate = p.beta2 * (p.K - eps) - p.gamma * eps / p.K;
  if (!(tumor_rate > 0.0) || !(vasculature_rate > 0.0)) return std::nullopt;
  return EnvelopePair{{t0max, tumor_rate, 0.0}, {phi0max, vasculature_rate, 0.0}};
}

Verdict check_envelope(const TimeSeries& series, const DecayEnvelope& env, double slack,
                       std::string monitor) {
  Verdict out;
  out.monitor = std::move(monitor);
  out.pass = true;
  out.worst_ratio = 0.0;
  out.t_worst = series.empty() ? 0.0 : series.t.front();
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double t = series.t[k];
    if (t < env.t_start) continue;
    const double bound = env(t);
    const double value = series.value[k];
    if (value > bound * (1.0 + slack)) out.pass = false;
    double ratio;
    if (bound > 0.0) ratio = value / bound;
    else ratio = value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.t_worst = t;
    }
  }
  return out;
}

Verdict phi_vanishing_check(std::span<const TimeSeries> cells, double threshold, double horizon) {
  Verdict out;
  out.monitor = "phi_vanishing";
  out.pass = true;
  for (const auto& cell : cells) {
    if (cell.empty()) continue;
    auto at = std::lower_bound(cell.t.begin(), cell.t.end(), horizon);
    const std::size_t k = at == cell.t.end() ? cell.size() - 1 : static_cast<std::size_t>(at - cell.t.begin());
    const double value = cell.value[k];
    const double ratio = value / threshold;
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.t_worst = cell.t[k];
    }
    if (value > threshold || cell.t.back() < horizon) out.pass = false;
    if (!non_increasing_from(cell, tail_begin(cell))) {
      out.pass = false;
      out.note = "vasculature increased over the final tenth";
    }
  }
  return out;
}

Verdict decay_check(const TimeSeries& series, double fraction, std::string monitor) {
  Verdict out;
  out.monitor = std::move(monitor);
  if (series.empty()) return out;
  const double first = series.value.front();
  const double last = series.value.back();
  out.t_worst = series.t.back();
  out.worst_ratio = first > 0.0 ? last / (fraction * first) : (last > 0.0 ? INFINITY : 0.0);
  const bool decayed = last <= fraction * first;
  const bool monotone = non_increasing_from(series, tail_begin(series));
  out.pass = decayed && monotone;
  if (!monotone) out.note = "increased over the final tenth";
  return out;
}

Verdict necrosis_bounded_check(const TimeSeries& necrosis_max, double tol) {
  Verdict out;
  out.monitor = "necrosis_bounded";
  if (necrosis_max.empty()) return out;
  const double peak = *std::max_element(necrosis_max.value.begin(), necrosis_max.value.end());
  const std::size_t begin = tail_begin(necrosis_max);
  const double increase = necrosis_max.value.back() - necrosis_max.value[begin];
  out.worst_ratio = increase / tol;
  out.t_worst = necrosis_max.t.back();
  out.pass = std::isfinite(peak) && increase <= tol;
  return out;
}

}  // namespace gbm::analysis
