#include "gbm/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "gbm/analysis.hpp"
#include "gbm/errors.hpp"
#include "gbm/io.hpp"
#include "gbm/monitors.hpp"
#include "gbm/spectral.hpp"

namespace gbm::app {

namespace {

bool requested(const config::ScenarioConfig& c, const std::string& name) {
  const auto& m = c.checks.monitors;
  return std::find(m.begin(), m.end(), name) != m.end();
}

TimeSeries after(const TimeSeries& s, double t0) {
  TimeSeries out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.t[k] >= t0) out.push(s.t[k], s.value[k]);
  }
  return out;
}

Verdict inapplicable(const std::string& monitor, const std::string& why) {
  Verdict v;
  v.monitor = monitor;
  v.pass = false;
  v.note = "inapplicable: " + why;
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t steps_per(double interval, double dt) {
  if (interval <= 0.0) return 0;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(interval / dt)));
}

}  // namespace

config::ScenarioConfig load_config(const std::string& name_or_path) {
  if (auto text = config::bundled_scenario(name_or_path)) return config::parse_config(*text);
  std::error_code ec;
  if (!std::filesystem::exists(name_or_path, ec)) {
    throw InvalidInput("`" + name_or_path + "` is neither a bundled scenario nor a readable file");
  }
  return config::parse_config(io::read_file(name_or_path));
}

void apply_overrides(config::ScenarioConfig& c, const Overrides& o) {
  if (o.out) c.output.directory = *o.out;
  if (o.dt) c.dt = *o.dt;
  if (o.t_end) c.t_end = *o.t_end;
  if (o.grid) {
    c.grid.nx = o.grid->first;
    c.grid.ny = o.grid->second;
  }
  auto problems = config::validate(c);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::vector<Verdict> evaluate_checks(const config::ScenarioConfig& c, const GridState& initial,
                                     const RunReport& report,
                                     const std::vector<TimeSeries>& probes) {
  const Params& p = c.params;
  const double warm = c.checks.warmup;
  const double slack = c.checks.slack;
  const TimeSeries tmax = report.extract(Norm::TumorMax);
  const TimeSeries phimax = report.extract(Norm::VasculatureMax);
  const TimeSeries nmax = report.extract(Norm::NecrosisMax);
  const double t0max = initial.tumor.max();
  const double n0min = initial.necrosis.min();
  const double phi0max = initial.vasculature.max();

  std::vector<Verdict> out;
  if (requested(c, "lemma43")) {
    if (!(n0min > 0.0)) {
      out.push_back(inapplicable("lemma43", "min N0 is not positive"));
    } else if (auto env = analysis::envelope_for_lemma43(p, n0min, phi0max, t0max)) {
      out.push_back(analysis::check_envelope(after(tmax, warm), env->tumor, slack, "lemma43_tumor"));
      out.push_back(
          analysis::check_envelope(after(phimax, warm), env->vasculature, slack, "lemma43_vasculature"));
    } else {
      out.push_back(inapplicable("lemma43", "delta < gamma / K"));
    }
  }
  if (requested(c, "lemma44")) {
    const auto k = analysis::select_t_star(tmax, p, n0min);
    if (!(n0min > 0.0)) {
      out.push_back(inapplicable("lemma44", "min N0 is not positive"));
    } else if (!k) {
      out.push_back(inapplicable("lemma44", "no sample with (gamma/K) ||T|| <= beta2 N0min / 2"));
    } else if (auto env = analysis::envelope_for_lemma44(p, initial.necrosis, t0max,
                                                         phimax.value[*k], phimax.t[*k])) {
      out.push_back(
          analysis::check_envelope(after(tmax, warm), env->envelopes.tumor, slack, "lemma44_tumor"));
      out.push_back(analysis::check_envelope(after(phimax, warm), env->envelopes.vasculature, slack,
                                             "lemma44_vasculature"));
    } else {
      out.push_back(inapplicable("lemma44", "rho >= lambda1(-Lap + beta1 N0)"));
    }
  }
  if (requested(c, "lemma45")) {
    const double eps = c.checks.lemma45_eps;
    auto env = analysis::envelope_for_lemma45(p, eps, t0max, phi0max);
    if (n0min < p.K - eps) {
      out.push_back(inapplicable("lemma45", "min N0 = " + fmt(n0min) + " < K - eps"));
    } else if (!env) {
      out.push_back(inapplicable("lemma45", "non-positive decay rate"));
    } else {
      out.push_back(analysis::check_envelope(after(tmax, warm), env->tumor, slack, "lemma45_tumor"));
      out.push_back(
          analysis::check_envelope(after(phimax, warm), env->vasculature, slack, "lemma45_vasculature"));
    }
  }
  if (requested(c, "phi_vanishing")) {
    std::vector<TimeSeries> cells;
    if (probes.empty()) {
      cells.push_back(after(phimax, warm));
    } else {
      for (const auto& s : probes) cells.push_back(after(s, warm));
    }
    out.push_back(analysis::phi_vanishing_check(cells, c.checks.phi_threshold, c.t_end));
  }
  if (requested(c, "decay")) {
    out.push_back(analysis::decay_check(tmax, c.checks.decay_fraction, "decay_tumor"));
    out.push_back(analysis::decay_check(phimax, c.checks.decay_fraction, "decay_vasculature"));
  }
  if (requested(c, "necrosis_bounded")) out.push_back(analysis::necrosis_bounded_check(nmax));
  return out;
}

ScenarioOutcome run_scenario(const config::ScenarioConfig& c, bool write_outputs) {
  ScenarioOutcome outcome;
  outcome.initial = config::build_initial_state(c);
  const Grid& grid = outcome.initial.grid();

  std::vector<pde::StepObserver*> observers;
  std::optional<analysis::AprioriMonitor> apriori;
  std::optional<analysis::NecrosisMonotoneMonitor> monotone;
  std::optional<io::SnapshotWriter> snapshots;
  if (requested(c, "apriori")) {
    apriori.emplace(c.params, c.t_end, c.checks.apriori_tol);
    observers.push_back(&*apriori);
  }
  if (requested(c, "necrosis_monotone")) {
    monotone.emplace();
    observers.push_back(&*monotone);
  }
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (const auto& pt : c.output.monitor_points) cells.push_back(config::cell_of(grid, pt));
  analysis::CellProbe probe(cells, steps_per(c.output.sample_interval, c.dt));
  observers.push_back(&probe);

  const std::filesystem::path dir = c.output.directory;
  if (write_outputs) {
    std::filesystem::create_directories(dir / "snapshots");
    snapshots.emplace(dir / "snapshots", steps_per(c.output.snapshot_interval, c.dt));
    observers.push_back(&*snapshots);
  }

  pde::SimulationOptions options;
  options.sample_interval = c.output.sample_interval;
  outcome.result = pde::run_simulation(outcome.initial, c.t_end, c.dt, c.params, observers, options);
  RunReport& report = outcome.result.report;
  for (auto& v : evaluate_checks(c, outcome.initial, report, probe.vasculature())) {
    report.verdicts.push_back(std::move(v));
  }
  outcome.pass = report.all_pass();

  if (write_outputs) {
    io::write_file_atomic(dir / "timeseries.csv", io::format_timeseries_csv(report.series));
    io::write_file_atomic(dir / "verdicts.csv", io::format_verdicts_csv(report.verdicts));
    io::write_file_atomic(dir / "plot.gp", io::gnuplot_script("timeseries.csv"));
    if (!cells.empty()) {
      std::ostringstream csv;
      csv << "cell,x,y,t,T,N,Phi\n";
      for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& T = probe.tumor()[k];
        for (std::size_t m = 0; m < T.size(); ++m) {
          csv << k << ',' << fmt(grid.x_center(cells[k].first)) << ','
              << fmt(grid.y_center(cells[k].second)) << ',' << fmt(T.t[m]) << ','
              << fmt(T.value[m]) << ',' << fmt(probe.necrosis()[k].value[m]) << ','
              << fmt(probe.vasculature()[k].value[m]) << '\n';
        }
      }
      io::write_file_atomic(dir / "probes.csv", csv.str());
    }
  }
  return outcome;
}

void print_report(std::ostream& os, const std::string& name, const RunReport& report) {
  os << "scenario " << name << "\n";
  for (const auto& v : report.verdicts) {
    os << "  " << (v.pass ? "PASS " : "FAIL ") << v.monitor << "  worst_ratio=" << fmt(v.worst_ratio)
       << "  t_worst=" << fmt(v.t_worst);
    if (!v.note.empty()) os << "  (" << v.note << ")";
    os << "\n";
  }
  const std::size_t failed = static_cast<std::size_t>(std::count_if(
      report.verdicts.begin(), report.verdicts.end(), [](const Verdict& v) { return !v.pass; }));
  os << "  violations: " << report.violations.size() << "\n";
  for (std::size_t k = 0; k < std::min<std::size_t>(5, report.violations.size()); ++k) {
    const auto& v = report.violations[k];
    os << "    t=" << fmt(v.t) << " " << v.monitor << " magnitude=" << fmt(v.magnitude) << " "
       << v.detail << "\n";
  }
  os << (report.all_pass() ? "RESULT PASS" : "RESULT FAIL") << " verdicts=" << report.verdicts.size()
     << " failed=" << failed << "\n";
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"rho",   "alpha", "beta1", "beta2", "gamma",
                                                "delta", "K",     "kappa0", "n0",   "phi0"};
  return axes;
}

const std::vector<std::string>& sweep_gates() {
  static const std::vector<std::string> gates = {"lemma43", "lemma44", "lemma45"};
  return gates;
}

void set_axis(config::ScenarioConfig& c, const std::string& axis, double value) {
  Params& p = c.params;
  if (axis == "rho") p.rho = value;
  else if (axis == "alpha") p.alpha = value;
  else if (axis == "beta1") p.beta1 = value;
  else if (axis == "beta2") p.beta2 = value;
  else if (axis == "gamma") p.gamma = value;
  else if (axis == "delta") p.delta = value;
  else if (axis == "K") p.K = value;
  else if (axis == "kappa0") p.kappa0 = value;
  else if (axis == "n0") c.initial.necrosis = value;
  else if (axis == "phi0") c.initial.vasculature = value;
  else throw InvalidInput("unknown sweep axis `" + axis + "`");
}

double gate_margin(const config::ScenarioConfig& c, const std::string& gate) {
  const Params& p = c.params;
  if (gate == "lemma43") return p.delta - p.gamma / p.K;
  if (gate == "lemma44") {
    const Grid grid(c.grid.nx, c.grid.ny, c.grid.x0, c.grid.x1, c.grid.y0, c.grid.y1);
    return spectral::check_rho_condition(p, ScalarField(grid, c.initial.necrosis)).margin;
  }
  if (gate == "lemma45") {
    const double eps = c.checks.lemma45_eps;
    const double rate_t = p.beta1 * (p.K - eps) - p.rho * eps / p.K;
    const double rate_phi = p.beta2 * (p.K - eps) - p.gamma * eps / p.K;
    return std::min({rate_t, rate_phi, c.initial.necrosis - (p.K - eps)});
  }
  throw InvalidInput("unknown gate `" + gate + "`");
}

std::optional<double> critical_value(const config::ScenarioConfig& c, const std::string& axis,
                                     const std::string& gate) {
  const Params& p = c.params;
  const double n0 = c.initial.necrosis;
  if (gate == "lemma43") {
    if (axis == "delta") return p.gamma / p.K;
    if (axis == "gamma") return p.delta * p.K;
    if (axis == "K") return p.gamma / p.delta;
  }
  // A constant potential has lambda1 = beta1 n0 exactly.
  if (gate == "lemma44" && n0 > 0.0) {
    if (axis == "rho") return p.beta1 * n0;
    if (axis == "beta1") return p.rho / n0;
    if (axis == "n0") return p.rho / p.beta1;
  }
  return std::nullopt;
}

std::vector<double> sweep_values(const std::string& text, std::size_t points) {
  std::vector<double> out;
  auto number = [&text](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidInput("bad sweep value `" + s + "` in `" + text + "`");
    return v;
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const double lo = number(text.substr(0, dots));
    const double hi = number(text.substr(dots + 2));
    if (!(hi >= lo)) throw InvalidInput("sweep range `" + text + "` must satisfy lo <= hi");
    if (points < 2 || lo == hi) return {lo};
    for (std::size_t k = 0; k < points; ++k) {
      out.push_back(k + 1 == points ? hi
                                    : lo + (hi - lo) * static_cast<double>(k) /
                                               static_cast<double>(points - 1));
    }
    return out;
  }
  std::istringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (!item.empty()) out.push_back(number(item));
  }
  if (out.empty()) throw InvalidInput("empty sweep value list");
  return out;
}

std::vector<SweepRow> run_sweep(const config::ScenarioConfig& base, const std::string& axis,
                                const std::vector<double>& values, const std::string& gate,
                                bool simulate) {
  if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end()) {
    throw InvalidInput("unknown sweep axis `" + axis + "`");
  }
  if (std::find(sweep_gates().begin(), sweep_gates().end(), gate) == sweep_gates().end()) {
    throw InvalidInput("unknown gate `" + gate + "`");
  }
  std::vector<SweepRow> rows;
  for (double v : values) {
    config::ScenarioConfig c = base;
    set_axis(c, axis, v);
    auto problems = config::validate(c);
    if (!problems.empty()) throw ConfigError(std::move(problems));
    SweepRow row{axis, v, gate, "", gate_margin(c, gate)};
    // lemma44 margins come from an iterative solve; the gate itself is the strict inequality.
    const bool applicable = gate == "lemma44" ? row.margin > 0.0 : row.margin >= 0.0;
    if (simulate) {
      if (!applicable) {
        row.verdict = "inapplicable";
      } else {
        c.checks.monitors = {gate};
        row.verdict = run_scenario(c, false).pass ? "pass" : "fail";
      }
    } else {
      row.verdict = applicable ? "applicable" : "inapplicable";
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "axis,value,gate,verdict,margin\n";
  for (const auto& r : rows) {
    out += r.axis + "," + fmt(r.value) + "," + r.gate + "," + r.verdict + "," + fmt(r.margin) + "\n";
  }
  return out;
}

std::vector<Verdict> kinetics_properties(unsigned long long seed, std::size_t samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> wide(-0.5, 1.5);
  const Params params[] = {Params::table2(), Params::table3()};

  Verdict sum{"sum_identity", true, 0.0, 0.0, ""};
  Verdict box{"truncated_box_invariance", true, 0.0, 0.0, ""};
  Verdict bd{"hypoxic_vascularized_bounds", true, 0.0, 0.0, ""};
  for (std::size_t k = 0; k < samples; ++k) {
    const Params& p = params[k % 2];
    const StateTriple s{wide(rng), wide(rng), wide(rng)};
    const StateTriple r = kinetics::reaction(s, p);
    const double total = r.tumor + r.necrosis + r.vasculature;
    const double err = std::abs(kinetics::sum_rate(s, p) - total) /
                       std::max(1.0, std::abs(r.tumor) + std::abs(r.necrosis) + std::abs(r.vasculature));
    sum.worst_ratio = std::max(sum.worst_ratio, err / 1e-12);

    // On the box faces the truncated rates must point inward.
    const StateTriple b{unit(rng) * p.K, unit(rng) * p.K, unit(rng) * p.K};
    const StateTriple faces[] = {{0.0, b.necrosis, b.vasculature}, {b.tumor, 0.0, b.vasculature},
                                 {b.tumor, b.necrosis, 0.0}};
    const StateTriple fb[] = {kinetics::truncated_reaction(faces[0], p),
                              kinetics::truncated_reaction(faces[1], p),
                              kinetics::truncated_reaction(faces[2], p)};
    const double outward = std::max({-fb[0].tumor, -fb[1].necrosis, -fb[2].vasculature, 0.0});
    box.worst_ratio = std::max(box.worst_ratio, outward / 1e-15);

    const double t = unit(rng), phi = unit(rng);
    const double B = kinetics::hypoxic_tumor(phi, t);
    const double D = kinetics::vascularized_tumor(phi, t);
    const double excess = std::max({B - t, D - t, -B, -D, 0.0});
    bd.worst_ratio = std::max(bd.worst_ratio, excess / 1e-15);
  }
  for (Verdict* v : {&sum, &box, &bd}) {
    v->pass = v->worst_ratio <= 1.0;
    v->note = std::to_string(samples) + " samples, seed " + std::to_string(seed);
  }
  return {sum, box, bd};
}

}  // namespace gbm::app
