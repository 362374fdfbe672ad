#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gbm/config.hpp"
#include "gbm/pde.hpp"

namespace gbm::app {

/// Command-line overrides applied on top of a scenario.
struct Overrides {
  std::optional<std::string> out;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::pair<std::size_t, std::size_t>> grid;
};

/// Bundled scenario name or path to a config file. Throws ConfigError / InvalidInput.
config::ScenarioConfig load_config(const std::string& name_or_path);

/// Applies overrides and re-validates; throws ConfigError on any problem.
void apply_overrides(config::ScenarioConfig& c, const Overrides& o);

struct ScenarioOutcome {
  GridState initial;
  pde::SimulationResult result;
  bool pass = false;  ///< no violations and every requested check passed
};

/// Runs the PDE for a scenario with its requested monitors and evaluates every check.
/// With `write_outputs`, emits timeseries.csv, verdicts.csv, plot.gp, probes.csv
/// and snapshots/ under the output directory.
ScenarioOutcome run_scenario(const config::ScenarioConfig& c, bool write_outputs = true);

/// Evaluates the post-run checks (envelopes, decay, vanishing, necrosis bound).
/// `probes` holds the vasculature series at the monitored cells.
std::vector<Verdict> evaluate_checks(const config::ScenarioConfig& c, const GridState& initial,
                                     const RunReport& report,
                                     const std::vector<TimeSeries>& probes);

/// One line per verdict plus a summary line.
void print_report(std::ostream& os, const std::string& name, const RunReport& report);

struct SweepRow {
  std::string axis;
  double value = 0.0;
  std::string gate;
  std::string verdict;  ///< applicable / inapplicable, or pass / fail when simulated
  double margin = 0.0;  ///< signed distance to the gate threshold
};

/// Axis names accepted by `sweep`: parameter names plus `n0` and `phi0`.
const std::vector<std::string>& sweep_axes();
/// Gate names accepted by `sweep`: lemma43, lemma44, lemma45.
const std::vector<std::string>& sweep_gates();

/// `lo..hi` (with `points` evenly spaced values) or a comma-separated list.
/// For a range, the gate's critical value is inserted when it lies inside it.
std::vector<double> sweep_values(const std::string& text, std::size_t points);

/// Gate margin for one configuration: delta - gamma/K, lambda1 - rho, or the smaller
/// of the two decay rates of the near-capacity necrosis envelope.
double gate_margin(const config::ScenarioConfig& c, const std::string& gate);

/// Sets one axis value on a config copy.
void set_axis(config::ScenarioConfig& c, const std::string& axis, double value);

/// Critical axis value where the gate margin vanishes, when it has a closed form.
std::optional<double> critical_value(const config::ScenarioConfig& c, const std::string& axis,
                                     const std::string& gate);

std::vector<SweepRow> run_sweep(const config::ScenarioConfig& base, const std::string& axis,
                                const std::vector<double>& values, const std::string& gate,
                                bool simulate);

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

/// Randomized kinetics property checks (sum identity, box invariance of the
/// truncated rates, B/D bounds). Returns the verdicts; deterministic for a seed.
std::vector<Verdict> kinetics_properties(unsigned long long seed, std::size_t samples = 100000);

}  // namespace gbm::app
