#include "gbm/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/errors.hpp"

namespace gbm {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::vector<std::string> Params::problems() const {
  std::vector<std::string> out;
  auto check = [&out](const char* name, double value) {
    if (!positive_finite(value)) {
      std::ostringstream os;
      os << name << " must be positive and finite (got " << value << ")";
      out.push_back(os.str());
    }
  };
  check("rho", rho);
  check("alpha", alpha);
  check("beta1", beta1);
  check("beta2", beta2);
  check("gamma", gamma);
  check("delta", delta);
  check("K", K);
  check("kappa0", kappa0);
  return out;
}

void Params::validate() const {
  auto issues = problems();
  if (issues.empty()) return;
  std::string msg = "invalid parameters:";
  for (const auto& s : issues) msg += " " + s + ";";
  throw InvalidInput(msg);
}

Params Params::table2() { return Params{}; }

Params Params::table3() {
  Params p;
  p.gamma = 0.3;
  p.delta = 0.03;
  return p;
}

double max_abs(const StateTriple& s) noexcept {
  return std::max({std::abs(s.tumor), std::abs(s.necrosis), std::abs(s.vasculature)});
}

namespace kinetics {

double vascular_fraction(double vasculature, double tumor) noexcept {
  const double phi = positive_part(vasculature);
  const double t = positive_part(tumor);
  const double denom = phi + t;
  if (denom == 0.0) return 0.0;
  return phi / denom;
}

double hypoxic_tumor(double vasculature, double tumor) noexcept {
  const double t = positive_part(tumor);
  if (t == 0.0) return 0.0;
  const double phi = positive_part(vasculature);
  // 1 - P^2 = t (t + 2 phi) / (t + phi)^2
  return t * std::sqrt(t * (t + 2.0 * phi)) / (t + phi);
}

double vascularized_tumor(double vasculature, double tumor) noexcept {
  const double t = positive_part(tumor);
  if (t == 0.0) return 0.0;
  const double phi = positive_part(vasculature);
  return t * phi / (t + phi);
}

double tumor_rate(const StateTriple& s, const Params& p) noexcept {
  const double logistic = 1.0 - s.total() / p.K;
  return p.rho * vascularized_tumor(s.vasculature, s.tumor) * logistic -
         p.alpha * hypoxic_tumor(s.vasculature, s.tumor) - p.beta1 * s.necrosis * s.tumor;
}

double necrosis_rate(const StateTriple& s, const Params& p) noexcept {
  return p.alpha * hypoxic_tumor(s.vasculature, s.tumor) + p.beta1 * s.necrosis * s.tumor +
         p.delta * s.tumor * s.vasculature + p.beta2 * s.necrosis * s.vasculature;
}

double vasculature_rate(const StateTriple& s, const Params& p) noexcept {
  const double logistic = 1.0 - s.total() / p.K;
  return p.gamma / p.K * hypoxic_tumor(s.vasculature, s.tumor) * s.vasculature * logistic -
         p.delta * s.tumor * s.vasculature - p.beta2 * s.necrosis * s.vasculature;
}

StateTriple reaction(const StateTriple& s, const Params& p) noexcept {
  return {tumor_rate(s, p), necrosis_rate(s, p), vasculature_rate(s, p)};
}

StateTriple truncated_reaction(const StateTriple& s, const Params& p) noexcept {
  const StateTriple positive{positive_part(s.tumor), positive_part(s.necrosis),
                             positive_part(s.vasculature)};
  StateTriple clamped = positive;
  clamped.tumor = clamp_to_capacity(s.tumor, p.K);
  return {tumor_rate(positive, p), necrosis_rate(clamped, p), vasculature_rate(clamped, p)};
}

double truncated_rate(Component c, const StateTriple& s, const Params& p) noexcept {
  const StateTriple r = truncated_reaction(s, p);
  switch (c) {
    case Component::Tumor: return r.tumor;
    case Component::Necrosis: return r.necrosis;
    case Component::Vasculature: return r.vasculature;
  }
  return 0.0;
}

double sum_rate(const StateTriple& s, const Params& p) noexcept {
  const double growth = p.rho * vascularized_tumor(s.vasculature, s.tumor) +
                        p.gamma / p.K * hypoxic_tumor(s.vasculature, s.tumor) * s.vasculature;
  return growth * (1.0 - s.total() / p.K);
}

double necrosis_bound(const Params& p, double t_final) noexcept {
  const double c1 = p.alpha * p.K + p.delta * p.K * p.K;
  const double c2 = (p.beta1 + p.beta2) * p.K;
  return std::exp(c2 * t_final) * (c1 / c2 + p.K);
}

}  // namespace kinetics
}  // namespace gbm
