#pragma once

#include <string>
#include <vector>

namespace gbm {

/// Norms of one sampled time level.
struct NormSample {
  double t = 0.0;
  double tumor_max = 0.0;
  double tumor_min = 0.0;
  double necrosis_max = 0.0;
  double necrosis_min = 0.0;
  double vasculature_max = 0.0;
  double vasculature_min = 0.0;
  double mass_tumor = 0.0;
  double mass_necrosis = 0.0;
  double mass_vasculature = 0.0;
};

/// (t, value) pairs, e.g. one norm extracted from a run.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> value;

  std::size_t size() const noexcept { return t.size(); }
  bool empty() const noexcept { return t.empty(); }
  void push(double time, double v) {
    t.push_back(time);
    value.push_back(v);
  }
};

struct Violation {
  double t = 0.0;
  std::string monitor;
  double magnitude = 0.0;  ///< distance outside the admissible range
  std::string detail;
};

struct Verdict {
  std::string monitor;
  bool pass = false;
  double worst_ratio = 0.0;
  double t_worst = 0.0;
  std::string note;
};

enum class Norm { TumorMax, TumorMin, NecrosisMax, VasculatureMax, MassTumor, MassNecrosis,
                  MassVasculature };

struct RunReport {
  std::vector<NormSample> series;
  std::vector<Violation> violations;  ///< sorted by t
  std::vector<Verdict> verdicts;

  /// Inserts keeping `violations` ordered by time.
  void add_violation(Violation v);
  TimeSeries extract(Norm which) const;
  /// No violations and every verdict passed.
  bool all_pass() const noexcept;
};

}  // namespace gbm
