#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbm/grid.hpp"
#include "gbm/kinetics.hpp"

namespace gbm::config {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Initial data: Gaussian tumor bumps over a uniform background, uniform N0 and Phi0.
struct InitialData {
  std::vector<Point> tumor_bumps;
  double tumor_amplitude = 0.8;
  double tumor_sigma = 0.3;
  double tumor_background = 0.0;
  double necrosis = 0.0;
  double vasculature = 0.5;
};

struct OutputSpec {
  std::string directory = "out";
  double sample_interval = 1.0;    ///< days between time-series rows
  double snapshot_interval = 0.0;  ///< days between snapshots; 0 writes initial and final only
  std::vector<Point> monitor_points;  ///< probed cells, by physical position
};

struct CheckSpec {
  std::vector<std::string> monitors;
  double apriori_tol = 1e-8;
  double slack = 1e-3;
  double lemma45_eps = 0.02;
  double phi_threshold = 1e-2;
  double decay_fraction = 0.1;
  double warmup = 0.0;  ///< envelope and vanishing checks ignore samples before this time
};

/// Optional point initial state for `ode run`.
struct OdeSpec {
  StateTriple initial;
};

struct ScenarioConfig {
  std::string name;
  Params params;
  Grid grid;
  InitialData initial;
  double t_end = 0.0;
  double dt = 0.0;
  OutputSpec output;
  CheckSpec checks;
  std::optional<OdeSpec> ode;
};

/// Monitor names accepted in `[checks] monitors`.
const std::vector<std::string>& known_monitors();

/// Parse and validate `key = value` text with `[section]` headers.
///
/// Throws ConfigError listing every problem: unknown keys, missing required
/// keys, malformed values, out-of-box initial data and dt above the step cap.
ScenarioConfig parse_config(const std::string& text);

/// Re-run validation after programmatic edits (CLI overrides, sweeps).
std::vector<std::string> validate(const ScenarioConfig& c);

/// Documented schema, one `section.key  description` line per key.
std::string schema();

GridState build_initial_state(const ScenarioConfig& c);

/// Cell containing (or nearest to) a physical point.
std::pair<std::size_t, std::size_t> cell_of(const Grid& g, Point p);

/// Names and texts of the bundled scenarios.
const std::vector<std::pair<std::string, std::string>>& bundled_scenarios();
std::optional<std::string> bundled_scenario(const std::string& name);

}  // namespace gbm::config
