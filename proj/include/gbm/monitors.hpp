#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "gbm/pde.hpp"

namespace gbm::analysis {

/// Per-step check of the pointwise a priori box; violations go into the report.
class AprioriMonitor : public pde::StepObserver {
 public:
  AprioriMonitor(Params p, double t_final, double tol = 1e-8);

  void on_start(const GridState& initial, RunReport& report) override;
  void on_step(const GridState& previous, const GridState& current, RunReport& report) override;
  void on_finish(const GridState& final_state, RunReport& report) override;

  std::size_t violation_count() const noexcept { return count_; }

 private:
  void scan(const GridState& s, RunReport& report);

  Params params_;
  double t_final_;
  double tol_;
  std::size_t count_ = 0;
};

/// Per-step, per-cell check that necrosis never decreases by more than `tol`.
class NecrosisMonotoneMonitor : public pde::StepObserver {
 public:
  explicit NecrosisMonotoneMonitor(double tol = 1e-10) : tol_(tol) {}

  void on_step(const GridState& previous, const GridState& current, RunReport& report) override;
  void on_finish(const GridState& final_state, RunReport& report) override;

  double worst_decrease() const noexcept { return worst_; }

 private:
  double tol_;
  double worst_ = 0.0;
  std::size_t count_ = 0;
};

/// Records T, N and Phi at fixed cells every `every` steps (and at the start/end).
class CellProbe : public pde::StepObserver {
 public:
  CellProbe(std::vector<std::pair<std::size_t, std::size_t>> cells, std::size_t every);

  void on_start(const GridState& initial, RunReport& report) override;
  void on_step(const GridState& previous, const GridState& current, RunReport& report) override;
  void on_finish(const GridState& final_state, RunReport& report) override;

  const std::vector<std::pair<std::size_t, std::size_t>>& cells() const noexcept { return cells_; }
  const std::vector<TimeSeries>& tumor() const noexcept { return tumor_; }
  const std::vector<TimeSeries>& necrosis() const noexcept { return necrosis_; }
  const std::vector<TimeSeries>& vasculature() const noexcept { return vasculature_; }

 private:
  void record(const GridState& s);

  std::vector<std::pair<std::size_t, std::size_t>> cells_;
  std::size_t every_;
  std::size_t step_ = 0;
  double last_t_ = -INFINITY;
  std::vector<TimeSeries> tumor_, necrosis_, vasculature_;
};

}  // namespace gbm::analysis
