#include "gbm/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/analysis.hpp"
#include "gbm/errors.hpp"

namespace gbm::analysis {

namespace {

// Keeps a broken run from producing millions of report rows.
constexpr std::size_t kMaxLoggedViolations = 1000;

}  // namespace

AprioriMonitor::AprioriMonitor(Params p, double t_final, double tol)
    : params_(p), t_final_(t_final), tol_(tol) {}

void AprioriMonitor::scan(const GridState& s, RunReport& report) {
  for (auto& v : apriori_bounds_monitor(s, params_, t_final_, tol_)) {
    if (count_++ < kMaxLoggedViolations) report.add_violation(std::move(v));
  }
}

void AprioriMonitor::on_start(const GridState& initial, RunReport& report) { scan(initial, report); }

void AprioriMonitor::on_step(const GridState&, const GridState& current, RunReport& report) {
  scan(current, report);
}

void AprioriMonitor::on_finish(const GridState&, RunReport& report) {
  Verdict v;
  v.monitor = "apriori_bounds";
  v.pass = count_ == 0;
  v.worst_ratio = static_cast<double>(count_);
  v.note = "value is the number of offending cell samples";
  report.verdicts.push_back(v);
}

void NecrosisMonotoneMonitor::on_step(const GridState& previous, const GridState& current,
                                      RunReport& report) {
  for (std::size_t k = 0; k < current.necrosis.size(); ++k) {
    const double drop = previous.necrosis[k] - current.necrosis[k];
    worst_ = std::max(worst_, drop);
    if (drop > tol_ && count_++ < kMaxLoggedViolations) {
      std::ostringstream os;
      os << "N decreased by " << drop << " at cell " << k;
      report.add_violation({current.t, "necrosis_monotone", drop, os.str()});
    }
  }
}

void NecrosisMonotoneMonitor::on_finish(const GridState&, RunReport& report) {
  Verdict v;
  v.monitor = "necrosis_monotone";
  v.pass = count_ == 0;
  v.worst_ratio = worst_ / tol_;
  report.verdicts.push_back(v);
}

CellProbe::CellProbe(std::vector<std::pair<std::size_t, std::size_t>> cells, std::size_t every)
    : cells_(std::move(cells)), every_(std::max<std::size_t>(1, every)),
      tumor_(cells_.size()), necrosis_(cells_.size()), vasculature_(cells_.size()) {}

void CellProbe::record(const GridState& s) {
  if (s.t == last_t_) return;
  last_t_ = s.t;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const auto [i, j] = cells_[c];
    tumor_[c].push(s.t, s.tumor(i, j));
    necrosis_[c].push(s.t, s.necrosis(i, j));
    vasculature_[c].push(s.t, s.vasculature(i, j));
  }
}

void CellProbe::on_start(const GridState& initial, RunReport&) {
  for (const auto& [i, j] : cells_) {
    if (i >= initial.grid().nx || j >= initial.grid().ny) {
      std::ostringstream os;
      os << "monitored cell (" << i << ", " << j << ") outside the grid";
      throw InvalidInput(os.str());
    }
  }
  record(initial);
}

void CellProbe::on_step(const GridState&, const GridState& current, RunReport&) {
  if (++step_ % every_ == 0) record(current);
}

void CellProbe::on_finish(const GridState& final_state, RunReport&) { record(final_state); }

}  // namespace gbm::analysis
