#include "gbm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "gbm/errors.hpp"
#include "gbm/pde.hpp"

namespace gbm {

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

namespace config {

namespace {

struct KeySpec {
  const char* key;
  bool required;
  const char* help;
};

const KeySpec kKeys[] = {
    {"scenario.name", false, "scenario label"},
    {"params.rho", true, "tumor proliferation rate (1/day)"},
    {"params.alpha", true, "hypoxic death rate (cell/day)"},
    {"params.beta1", true, "tumor -> necrosis rate (1/day)"},
    {"params.beta2", true, "vasculature -> necrosis rate (1/day)"},
    {"params.gamma", true, "vasculature proliferation rate (1/day)"},
    {"params.delta", true, "vasculature destruction rate (1/day)"},
    {"params.K", true, "carrying capacity (cell/cm^3)"},
    {"params.kappa0", false, "tumor diffusion coefficient (cm^2/day), default 1"},
    {"grid.nx", true, "cells along x (>= 3)"},
    {"grid.ny", true, "cells along y (>= 3)"},
    {"grid.x0", true, "domain lower x bound (cm)"},
    {"grid.x1", true, "domain upper x bound (cm)"},
    {"grid.y0", true, "domain lower y bound (cm)"},
    {"grid.y1", true, "domain upper y bound (cm)"},
    {"initial.necrosis", true, "uniform N0 in [0, K]"},
    {"initial.vasculature", true, "uniform Phi0 in [0, K]"},
    {"initial.tumor_bumps", false, "tumor centres `x,y; x,y; ...` (empty: none)"},
    {"initial.tumor_amplitude", false, "Gaussian bump amplitude in [0, K], default 0.8"},
    {"initial.tumor_sigma", false, "Gaussian bump width (cm), default 0.3"},
    {"initial.tumor_background", false, "uniform tumor level in [0, K], default 0"},
    {"run.t_end", true, "final time (day)"},
    {"run.dt", true, "time step (day)"},
    {"output.directory", false, "output directory, default `out`"},
    {"output.sample_interval", false, "days between time-series rows, default 1"},
    {"output.snapshot_interval", false, "days between snapshots, 0 = initial and final only"},
    {"output.monitor_points", false, "probed positions `x,y; x,y; ...`"},
    {"checks.monitors", false, "comma-separated monitor names"},
    {"checks.apriori_tol", false, "a priori box tolerance, default 1e-8"},
    {"checks.slack", false, "multiplicative envelope slack, default 1e-3"},
    {"checks.lemma45_eps", false, "eps of the N0 >= K - eps envelope, default 0.02"},
    {"checks.phi_threshold", false, "vasculature vanishing threshold, default 1e-2"},
    {"checks.decay_fraction", false, "final/initial max ratio for `decay`, default 0.1"},
    {"checks.warmup", false, "days skipped by envelope checks, default 0"},
    {"ode.T0", false, "point initial tumor for `ode run`"},
    {"ode.N0", false, "point initial necrosis for `ode run`"},
    {"ode.Phi0", false, "point initial vasculature for `ode run`"},
};

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string section_key(const std::string& key) {
  auto dot = key.find('.');
  return "[" + key.substr(0, dot) + "] " + key.substr(dot + 1);
}

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::vector<std::string>& problems)
      : entries_(std::move(entries)), problems_(problems) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string where(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return section_key(key);
    return "line " + std::to_string(it->second.line) + ": " + section_key(key);
  }

  void number(const std::string& key, double& out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return;
    const std::string& v = it->second.value;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || !std::isfinite(x)) {
      problems_.push_back(where(key) + ": expected a number, got `" + v + "`");
      return;
    }
    out = x;
  }

  void count(const std::string& key, std::size_t& out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return;
    const std::string& v = it->second.value;
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || x < 0) {
      problems_.push_back(where(key) + ": expected a nonnegative integer, got `" + v + "`");
      return;
    }
    out = static_cast<std::size_t>(x);
  }

  void text(const std::string& key, std::string& out) {
    auto it = entries_.find(key);
    if (it != entries_.end()) out = it->second.value;
  }

  void points(const std::string& key, std::vector<Point>& out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return;
    out.clear();
    std::istringstream items(it->second.value);
    std::string item;
    while (std::getline(items, item, ';')) {
      item = trim(item);
      if (item.empty()) continue;
      auto comma = item.find(',');
      char* e1 = nullptr;
      char* e2 = nullptr;
      const std::string xs = trim(item.substr(0, comma));
      const std::string ys = comma == std::string::npos ? "" : trim(item.substr(comma + 1));
      const double x = std::strtod(xs.c_str(), &e1);
      const double y = std::strtod(ys.c_str(), &e2);
      if (xs.empty() || ys.empty() || *e1 != '\0' || *e2 != '\0') {
        problems_.push_back(where(key) + ": expected `x,y` pairs separated by `;`, got `" + item + "`");
        continue;
      }
      out.push_back({x, y});
    }
  }

  void names(const std::string& key, std::vector<std::string>& out) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return;
    out.clear();
    std::istringstream items(it->second.value);
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::vector<std::string>& problems_;
};

/// Validation problems tagged with the key they concern.
std::vector<std::pair<std::string, std::string>> check(const ScenarioConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&out](const std::string& key, const std::string& msg) { out.emplace_back(key, msg); };
  auto num = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };

  const Params& p = c.params;
  const std::pair<const char*, double> coefficients[] = {
      {"params.rho", p.rho},       {"params.alpha", p.alpha}, {"params.beta1", p.beta1},
      {"params.beta2", p.beta2},   {"params.gamma", p.gamma}, {"params.delta", p.delta},
      {"params.K", p.K},           {"params.kappa0", p.kappa0}};
  for (const auto& [key, v] : coefficients) {
    if (!(v > 0.0) || !std::isfinite(v)) add(key, "must be positive, got " + num(v));
  }

  const Grid& g = c.grid;
  if (g.nx < 3) add("grid.nx", "must be at least 3, got " + std::to_string(g.nx));
  if (g.ny < 3) add("grid.ny", "must be at least 3, got " + std::to_string(g.ny));
  if (!(g.x1 > g.x0)) add("grid.x1", "must exceed x0");
  if (!(g.y1 > g.y0)) add("grid.y1", "must exceed y0");

  // Initial data must lie in the box 0 <= T0, N0, Phi0 <= K.
  const InitialData& in = c.initial;
  const double K = p.K;
  auto in_box = [&](const char* key, double v) {
    if (!(v >= 0.0 && v <= K)) add(key, num(v) + " outside [0, K] with K = " + num(K));
  };
  in_box("initial.tumor_amplitude", in.tumor_amplitude);
  in_box("initial.tumor_background", in.tumor_background);
  in_box("initial.necrosis", in.necrosis);
  in_box("initial.vasculature", in.vasculature);
  if (!(in.tumor_sigma > 0.0)) add("initial.tumor_sigma", "must be positive, got " + num(in.tumor_sigma));

  if (!(c.t_end > 0.0)) add("run.t_end", "must be positive, got " + num(c.t_end));
  if (!(c.dt > 0.0)) {
    add("run.dt", "must be positive, got " + num(c.dt));
  } else if (p.problems().empty()) {
    const double cap = pde::max_stable_dt(p, std::max(K, in.necrosis));
    if (c.dt > cap) add("run.dt", num(c.dt) + " exceeds the reaction step cap " + num(cap));
  }

  if (!(c.output.sample_interval >= 0.0)) add("output.sample_interval", "must be nonnegative");
  if (!(c.output.snapshot_interval >= 0.0)) add("output.snapshot_interval", "must be nonnegative");

  const auto& known = known_monitors();
  for (const auto& m : c.checks.monitors) {
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      add("checks.monitors", "unknown monitor `" + m + "`");
    }
  }
  if (!(c.checks.apriori_tol > 0.0)) add("checks.apriori_tol", "must be positive");
  if (!(c.checks.slack >= 0.0)) add("checks.slack", "must be nonnegative");
  if (!(c.checks.lemma45_eps > 0.0 && c.checks.lemma45_eps < K)) add("checks.lemma45_eps", "must lie in (0, K)");
  if (!(c.checks.phi_threshold > 0.0)) add("checks.phi_threshold", "must be positive");
  if (!(c.checks.decay_fraction > 0.0)) add("checks.decay_fraction", "must be positive");
  if (!(c.checks.warmup >= 0.0)) add("checks.warmup", "must be nonnegative");

  if (c.ode) {
    in_box("ode.T0", c.ode->initial.tumor);
    in_box("ode.N0", c.ode->initial.necrosis);
    in_box("ode.Phi0", c.ode->initial.vasculature);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_monitors() {
  static const std::vector<std::string> names = {
      "apriori", "necrosis_monotone", "lemma43", "lemma44", "lemma45",
      "phi_vanishing", "decay", "necrosis_bounded"};
  return names;
}

ScenarioConfig parse_config(const std::string& text) {
  std::vector<std::string> problems;
  std::map<std::string, Entry> entries;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    // `;` separates list items inside values, so only `#` and a leading `;` start comments.
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line[0] == ';') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back(where + ": malformed section header `" + line + "`");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back(where + ": expected `key = value`, got `" + line + "`");
      continue;
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const bool known = std::any_of(std::begin(kKeys), std::end(kKeys),
                                   [&key](const KeySpec& k) { return key == k.key; });
    if (section.empty()) {
      problems.push_back(where + ": key `" + trim(line.substr(0, eq)) + "` outside any [section]");
      continue;
    }
    if (!known) {
      problems.push_back(where + ": unknown key " + section_key(key));
      continue;
    }
    if (entries.count(key)) {
      problems.push_back(where + ": duplicate key " + section_key(key) + " (first on line " +
                         std::to_string(entries[key].line) + ")");
      continue;
    }
    entries[key] = {value, line_no};
  }

  for (const auto& k : kKeys) {
    if (k.required && !entries.count(k.key)) {
      problems.push_back("missing required key " + section_key(k.key) + " (" + k.help + ")");
    }
  }

  Reader r(entries, problems);
  ScenarioConfig c;
  r.text("scenario.name", c.name);
  r.number("params.rho", c.params.rho);
  r.number("params.alpha", c.params.alpha);
  r.number("params.beta1", c.params.beta1);
  r.number("params.beta2", c.params.beta2);
  r.number("params.gamma", c.params.gamma);
  r.number("params.delta", c.params.delta);
  r.number("params.K", c.params.K);
  r.number("params.kappa0", c.params.kappa0);
  r.count("grid.nx", c.grid.nx);
  r.count("grid.ny", c.grid.ny);
  r.number("grid.x0", c.grid.x0);
  r.number("grid.x1", c.grid.x1);
  r.number("grid.y0", c.grid.y0);
  r.number("grid.y1", c.grid.y1);
  r.points("initial.tumor_bumps", c.initial.tumor_bumps);
  r.number("initial.tumor_amplitude", c.initial.tumor_amplitude);
  r.number("initial.tumor_sigma", c.initial.tumor_sigma);
  r.number("initial.tumor_background", c.initial.tumor_background);
  r.number("initial.necrosis", c.initial.necrosis);
  r.number("initial.vasculature", c.initial.vasculature);
  r.number("run.t_end", c.t_end);
  r.number("run.dt", c.dt);
  r.text("output.directory", c.output.directory);
  r.number("output.sample_interval", c.output.sample_interval);
  r.number("output.snapshot_interval", c.output.snapshot_interval);
  r.points("output.monitor_points", c.output.monitor_points);
  r.names("checks.monitors", c.checks.monitors);
  r.number("checks.apriori_tol", c.checks.apriori_tol);
  r.number("checks.slack", c.checks.slack);
  r.number("checks.lemma45_eps", c.checks.lemma45_eps);
  r.number("checks.phi_threshold", c.checks.phi_threshold);
  r.number("checks.decay_fraction", c.checks.decay_fraction);
  r.number("checks.warmup", c.checks.warmup);
  if (r.has("ode.T0") || r.has("ode.N0") || r.has("ode.Phi0")) {
    OdeSpec ode;
    r.number("ode.T0", ode.initial.tumor);
    r.number("ode.N0", ode.initial.necrosis);
    r.number("ode.Phi0", ode.initial.vasculature);
    c.ode = ode;
  }

  // Value checks only make sense once every required key is present.
  const bool complete = std::none_of(problems.begin(), problems.end(), [](const std::string& s) {
    return s.rfind("missing required key", 0) == 0;
  });
  if (complete) {
    for (const auto& [key, msg] : check(c)) problems.push_back(r.where(key) + ": " + msg);
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> out;
  for (const auto& [key, msg] : check(c)) out.push_back(section_key(key) + ": " + msg);
  return out;
}

std::string schema() {
  std::ostringstream os;
  for (const auto& k : kKeys) {
    os << (k.required ? "* " : "  ") << section_key(k.key) << "  " << k.help << "\n";
  }
  os << "(* = required)\n";
  return os.str();
}

std::pair<std::size_t, std::size_t> cell_of(const Grid& g, Point p) {
  auto index = [](double v, double lo, double h, std::size_t n) {
    const double k = std::floor((v - lo) / h);
    if (k < 0.0) return std::size_t{0};
    if (k >= static_cast<double>(n)) return n - 1;
    return static_cast<std::size_t>(k);
  };
  return {index(p.x, g.x0, g.hx(), g.nx), index(p.y, g.y0, g.hy(), g.ny)};
}

GridState build_initial_state(const ScenarioConfig& c) {
  const Grid grid(c.grid.nx, c.grid.ny, c.grid.x0, c.grid.x1, c.grid.y0, c.grid.y1);
  const InitialData& in = c.initial;
  const double K = c.params.K;
  ScalarField tumor(grid);
  const double two_sigma2 = 2.0 * in.tumor_sigma * in.tumor_sigma;
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      double v = in.tumor_background;
      for (const auto& b : in.tumor_bumps) {
        const double dx = grid.x_center(i) - b.x;
        const double dy = grid.y_center(j) - b.y;
        v += in.tumor_amplitude * std::exp(-(dx * dx + dy * dy) / two_sigma2);
      }
      tumor(i, j) = std::clamp(v, 0.0, K);
    }
  }
  return GridState(0.0, std::move(tumor), ScalarField(grid, in.necrosis),
                   ScalarField(grid, in.vasculature));
}

}  // namespace config
}  // namespace gbm
