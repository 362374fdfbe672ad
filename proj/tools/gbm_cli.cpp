// Command-line front end: pde run, ode run, eig, verify, sweep.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gbm/app.hpp"
#include "gbm/config.hpp"
#include "gbm/errors.hpp"
#include "gbm/io.hpp"
#include "gbm/ode.hpp"
#include "gbm/spectral.hpp"

namespace {

enum Exit { kOk = 0, kMonitorFailure = 1, kInputError = 2, kSolverError = 3 };

struct Globals {
  std::string config_path;
  std::string out;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::vector<std::size_t> grid;
  std::optional<unsigned long long> seed;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

gbm::config::ScenarioConfig resolve(const Globals& g, const std::string& scenario,
                                    const std::string& fallback) {
  std::string source = !scenario.empty() ? scenario : g.config_path;
  if (source.empty()) source = fallback;
  if (source.empty()) throw gbm::InvalidInput("no scenario given (positional name or --config PATH)");
  auto c = gbm::app::load_config(source);
  gbm::app::Overrides o;
  if (!g.out.empty()) o.out = g.out;
  o.dt = g.dt;
  o.t_end = g.t_end;
  if (!g.grid.empty()) o.grid = std::make_pair(g.grid.at(0), g.grid.at(1));
  gbm::app::apply_overrides(c, o);
  return c;
}

int report_failures(const gbm::RunReport& report) {
  if (report.all_pass()) return kOk;
  std::string failed;
  for (const auto& v : report.verdicts) {
    if (!v.pass) failed += (failed.empty() ? "" : ",") + v.monitor;
  }
  std::cerr << "FAILURE kind=monitor failed=" << failed
            << " violations=" << report.violations.size() << "\n";
  return kMonitorFailure;
}

gbm::StateTriple parse_state(const std::string& text) {
  gbm::StateTriple s;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &s.tumor, &s.necrosis, &s.vasculature, &tail) != 3) {
    throw gbm::InvalidInput("--state expects T,N,Phi, got `" + text + "`");
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glioblastoma tumor / necrosis / vasculature simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "scenario config file");
  app.add_option("--out", g.out, "output directory (overrides [output] directory)");
  app.add_option("--dt", g.dt, "time step (day)");
  app.add_option("--t-end", g.t_end, "final time (day)");
  app.add_option("--grid", g.grid, "grid cells NX NY")->expected(2);
  app.add_option("--seed", g.seed, "seed for randomized property checks");

  // pde run
  auto* pde = app.add_subcommand("pde", "reaction-diffusion simulation");
  pde->require_subcommand(1);
  auto* pde_run = pde->add_subcommand("run", "run a scenario and evaluate its monitors");
  std::string pde_scenario;
  pde_run->add_option("scenario", pde_scenario, "bundled scenario name or config path");

  // ode run
  auto* ode = app.add_subcommand("ode", "spatially homogeneous kinetics");
  ode->require_subcommand(1);
  auto* ode_run = ode->add_subcommand("run", "integrate the kinetics ODE and write ode.csv");
  std::string ode_scenario, ode_state, ode_method = "rk4", ode_kinetics = "truncated";
  std::optional<double> omega_horizon;
  std::size_t record_every = 1;
  ode_run->add_option("scenario", ode_scenario, "bundled scenario name or config path");
  ode_run->add_option("--state", ode_state, "initial state T,N,Phi");
  ode_run->add_option("--method", ode_method, "rk4 or euler")->check(CLI::IsMember({"rk4", "euler"}));
  ode_run->add_option("--kinetics", ode_kinetics, "truncated or raw")
      ->check(CLI::IsMember({"truncated", "raw"}));
  ode_run->add_option("--record-every", record_every, "keep every n-th step")->check(CLI::PositiveNumber);
  ode_run->add_option("--omega-limit", omega_horizon, "also estimate the omega-limit over this horizon");

  // eig
  auto* eig = app.add_subcommand("eig", "first eigenvalue of -Lap + beta1 N0");
  std::string eig_scenario, eig_snapshot;
  std::optional<double> eig_beta1, eig_n0;
  double eig_tol = 1e-10;
  eig->add_option("scenario", eig_scenario, "bundled scenario name or config path");
  eig->add_option("--beta1", eig_beta1, "override beta1");
  eig->add_option("--n0", eig_n0, "constant necrosis level");
  eig->add_option("--snapshot", eig_snapshot, "necrosis snapshot file used as N0");
  eig->add_option("--tol", eig_tol, "eigenvalue tolerance");

  // verify
  auto* verify = app.add_subcommand("verify", "run a scenario and print a text verdict report");
  std::string verify_scenario;
  verify->add_option("scenario", verify_scenario, "bundled scenario name or config path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a lemma gate along a parameter axis");
  std::string axis, values, gate = "lemma43", sweep_scenario;
  std::size_t points = 11;
  bool simulate = false;
  sweep->add_option("axis", axis, "parameter axis")->required()->check(CLI::IsMember(gbm::app::sweep_axes()));
  sweep->add_option("values", values, "lo..hi or v1,v2,...")->required();
  sweep->add_option("--points", points, "points across a lo..hi range")->check(CLI::PositiveNumber);
  sweep->add_option("--gate", gate, "lemma43, lemma44 or lemma45")
      ->check(CLI::IsMember(gbm::app::sweep_gates()));
  sweep->add_option("--scenario", sweep_scenario, "base scenario (default table2_one_tumor)");
  sweep->add_flag("--simulate", simulate, "run each point and report the envelope verdict");

  auto* list = app.add_subcommand("scenarios", "list bundled scenarios");
  auto* show = app.add_subcommand("show", "print a bundled scenario's config text");
  std::string show_name;
  show->add_option("name", show_name)->required();
  auto* schema = app.add_subcommand("schema", "print the config schema");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pde_run) {
      auto c = resolve(g, pde_scenario, "");
      auto outcome = gbm::app::run_scenario(c, true);
      gbm::app::print_report(std::cout, c.name, outcome.result.report);
      std::cout << "outputs in " << c.output.directory << "\n";
      return report_failures(outcome.result.report);
    }
    if (*ode_run) {
      auto c = resolve(g, ode_scenario, "uniform_ode_match");
      gbm::StateTriple s0;
      if (!ode_state.empty()) {
        s0 = parse_state(ode_state);
      } else if (c.ode) {
        s0 = c.ode->initial;
      } else {
        throw gbm::InvalidInput("no initial state: pass --state T,N,Phi or add an [ode] section");
      }
      gbm::ode::IntegrateOptions opt;
      opt.method = ode_method == "euler" ? gbm::ode::Method::Euler : gbm::ode::Method::Rk4;
      opt.kinetics = ode_kinetics == "raw" ? gbm::ode::Kinetics::Raw : gbm::ode::Kinetics::Truncated;
      opt.record_every = record_every;
      auto sol = gbm::ode::integrate(s0, c.t_end, c.dt, c.params, opt);
      std::filesystem::create_directories(c.output.directory);
      const auto path = std::filesystem::path(c.output.directory) / "ode.csv";
      gbm::io::write_file_atomic(path, gbm::io::format_ode_csv(sol));
      const auto& last = sol.states.back();
      std::cout << "final t=" << fmt(sol.times.back()) << " T=" << fmt(last.tumor)
                << " N=" << fmt(last.necrosis) << " Phi=" << fmt(last.vasculature) << "\n";
      std::cout << "wrote " << path.string() << "\n";
      if (omega_horizon) {
        auto w = gbm::ode::omega_limit_estimate(s0, c.params, *omega_horizon, c.dt);
        auto cls = gbm::ode::classify_equilibrium(w.state, c.params, 1e-6);
        std::cout << "omega-limit T=" << fmt(w.state.tumor) << " N=" << fmt(w.state.necrosis)
                  << " Phi=" << fmt(w.state.vasculature) << " class=" << gbm::ode::to_string(cls.tag)
                  << " converged=" << (w.converged ? "yes" : "no") << "\n";
      }
      return kOk;
    }
    if (*eig) {
      auto c = resolve(g, eig_scenario, "table2_one_tumor");
      const double beta1 = eig_beta1.value_or(c.params.beta1);
      gbm::ScalarField potential;
      if (!eig_snapshot.empty()) {
        potential = gbm::io::parse_snapshot(gbm::io::read_file(eig_snapshot)).field;
      } else {
        const gbm::Grid grid(c.grid.nx, c.grid.ny, c.grid.x0, c.grid.x1, c.grid.y0, c.grid.y1);
        potential = gbm::ScalarField(grid, eig_n0.value_or(c.initial.necrosis));
      }
      for (auto& v : potential.values()) v *= beta1;
      gbm::spectral::EigenOptions opt;
      opt.tol = eig_tol;
      auto r = gbm::spectral::lambda1(potential, opt);
      std::cout << "lambda1 = " << fmt(r.lambda1) << "\n"
                << "iterations = " << r.iterations << "\n"
                << "residual = " << fmt(r.residual) << "\n"
                << "rho = " << fmt(c.params.rho) << "  rho < lambda1: "
                << (c.params.rho < r.lambda1 ? "yes" : "no") << "\n";
      return kOk;
    }
    if (*verify) {
      gbm::RunReport report;
      std::string name = "kinetics";
      if (!verify_scenario.empty() || !g.config_path.empty() || !g.seed) {
        auto c = resolve(g, verify_scenario, "");
        name = c.name;
        report = gbm::app::run_scenario(c, false).result.report;
      }
      if (g.seed) {
        for (auto& v : gbm::app::kinetics_properties(*g.seed)) report.verdicts.push_back(std::move(v));
      }
      gbm::app::print_report(std::cout, name, report);
      return report_failures(report);
    }
    if (*sweep) {
      auto c = resolve(g, sweep_scenario, "table2_one_tumor");
      auto vals = gbm::app::sweep_values(values, points);
      if (values.find("..") != std::string::npos && vals.size() > 1) {
        if (auto crit = gbm::app::critical_value(c, axis, gate)) {
          if (*crit > vals.front() && *crit < vals.back()) {
            vals.insert(std::lower_bound(vals.begin(), vals.end(), *crit), *crit);
          }
        }
      }
      auto rows = gbm::app::run_sweep(c, axis, vals, gate, simulate);
      std::cout << gbm::app::format_sweep_csv(rows);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.verdict != "fail";
      if (!ok) std::cerr << "FAILURE kind=sweep\n";
      return ok ? kOk : kMonitorFailure;
    }
    if (*list) {
      for (const auto& [name, text] : gbm::config::bundled_scenarios()) std::cout << name << "\n";
      return kOk;
    }
    if (*show) {
      auto text = gbm::config::bundled_scenario(show_name);
      if (!text) throw gbm::InvalidInput("unknown scenario `" + show_name + "`");
      std::cout << *text;
      return kOk;
    }
    if (*schema) {
      std::cout << gbm::config::schema();
      return kOk;
    }
  } catch (const gbm::ConfigError& e) {
    for (const auto& p : e.problems()) std::cerr << "config: " << p << "\n";
    std::cerr << "FAILURE kind=config problems=" << e.problems().size() << "\n";
    return kInputError;
  } catch (const gbm::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "FAILURE kind=input\n";
    return kInputError;
  } catch (const gbm::SolverFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "FAILURE kind=solver t=" << fmt(e.time()) << " residual=" << fmt(e.residual()) << "\n";
    return kSolverError;
  } catch (const gbm::IntegrationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "FAILURE kind=integration t=" << fmt(e.time()) << "\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "FAILURE kind=io\n";
    return kInputError;
  }
  return kOk;
}
