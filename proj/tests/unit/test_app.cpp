#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gbm/app.hpp"
#include "gbm/errors.hpp"
#include "gbm/io.hpp"

namespace gbm::app {
namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::path(GBM_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  return dir;
}

config::ScenarioConfig small(const std::string& name, const std::string& out) {
  auto c = load_config(name);
  Overrides o;
  o.out = out;
  o.grid = std::make_pair(std::size_t{16}, std::size_t{16});
  o.t_end = 4.0;
  o.dt = 0.05;
  apply_overrides(c, o);
  c.output.sample_interval = 0.5;
  c.output.snapshot_interval = 2.0;
  return c;
}

TEST(LoadConfig, BundledNamesAndFiles) {
  EXPECT_EQ(load_config("lemma45_envelope").initial.necrosis, 0.98);
  EXPECT_THROW(load_config("/nonexistent/file.cfg"), InvalidInput);
  const auto dir = scratch("load");
  io::write_file_atomic(dir / "x.cfg", *config::bundled_scenario("lemma43_envelope"));
  EXPECT_EQ(load_config((dir / "x.cfg").string()).initial.necrosis, 0.1);
}

TEST(ApplyOverrides, RevalidatesStepCap) {
  auto c = load_config("table2_one_tumor");
  Overrides o;
  o.dt = 2.0;
  EXPECT_THROW(apply_overrides(c, o), ConfigError);
}

TEST(RunScenario, WritesOutputsAndIsReproducible) {
  const auto a = scratch("repro_a"), b = scratch("repro_b");
  auto ca = small("table2_one_tumor", a.string());
  auto cb = small("table2_one_tumor", b.string());
  ca.checks.monitors = cb.checks.monitors = {"apriori", "necrosis_monotone"};
  const auto ra = run_scenario(ca);
  const auto rb = run_scenario(cb);
  EXPECT_TRUE(ra.pass);
  for (const char* f : {"timeseries.csv", "verdicts.csv", "probes.csv", "plot.gp"}) {
    ASSERT_TRUE(std::filesystem::exists(a / f)) << f;
    EXPECT_EQ(io::read_file(a / f), io::read_file(b / f)) << f;
  }
  EXPECT_TRUE(std::filesystem::exists(a / "snapshots" / "T_00000000.txt"));
  EXPECT_TRUE(std::filesystem::exists(a / "snapshots" / "Phi_00000040.txt"));
  EXPECT_TRUE(std::filesystem::exists(a / "snapshots" / "N_00000080.txt"));
  EXPECT_EQ(io::read_file(a / "verdicts.csv"),
            "monitor,verdict,worst_ratio,t_worst\napriori_bounds,pass,0,0\nnecrosis_monotone,pass,0,0\n");
}

TEST(RunScenario, ShortRunFailsDecayChecks) {
  auto c = small("table2_one_tumor", scratch("short").string());
  const auto r = run_scenario(c, false);
  EXPECT_FALSE(r.pass);
  bool decay_failed = false;
  for (const auto& v : r.result.report.verdicts) {
    if (v.monitor == "decay_tumor") decay_failed = !v.pass;
    if (v.monitor == "apriori_bounds") {
      EXPECT_TRUE(v.pass);
    }
  }
  EXPECT_TRUE(decay_failed);
  EXPECT_FALSE(std::filesystem::exists(c.output.directory));
}

TEST(EvaluateChecks, InapplicableGatesFail) {
  auto c = small("table3_one_tumor", scratch("gates").string());
  c.checks.monitors = {"lemma43", "lemma44", "lemma45"};
  const auto r = run_scenario(c, false);
  ASSERT_EQ(r.result.report.verdicts.size(), 3u);
  for (const auto& v : r.result.report.verdicts) {
    EXPECT_FALSE(v.pass) << v.monitor;
    EXPECT_EQ(v.note.rfind("inapplicable", 0), 0u) << v.note;
  }
  std::ostringstream os;
  print_report(os, "x", r.result.report);
  EXPECT_NE(os.str().find("RESULT FAIL"), std::string::npos);
}

TEST(Sweep, ValueParsing) {
  EXPECT_EQ(sweep_values("0..1", 3), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(sweep_values("0.1,0.2", 3), (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(sweep_values("2..2", 5), (std::vector<double>{2.0}));
  EXPECT_THROW(sweep_values("1..0", 3), InvalidInput);
  EXPECT_THROW(sweep_values("a,b", 3), InvalidInput);
}

TEST(Sweep, Lemma43GateFlipsAtCriticalDelta) {
  const auto c = load_config("table2_one_tumor");
  const auto crit = critical_value(c, "delta", "lemma43");
  ASSERT_TRUE(crit);
  EXPECT_DOUBLE_EQ(*crit, c.params.gamma / c.params.K);
  const auto rows = run_sweep(c, "delta", {0.001, std::nextafter(*crit, 0.0), *crit, 0.1, 0.3},
                              "lemma43", false);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].verdict, "inapplicable");
  EXPECT_EQ(rows[1].verdict, "inapplicable");
  EXPECT_EQ(rows[2].verdict, "applicable");
  EXPECT_EQ(rows[2].margin, 0.0);
  EXPECT_EQ(rows[4].verdict, "applicable");
  EXPECT_EQ(format_sweep_csv({rows[2]}), "axis,value,gate,verdict,margin\ndelta,0.0030000000000000001,lemma43,applicable,0\n");
}

TEST(Sweep, Lemma44GateOnBeta1) {
  auto c = load_config("lemma44_envelope");
  c.grid.nx = c.grid.ny = 12;
  const auto rows = run_sweep(c, "beta1", {0.5, 0.99, 1.01, 2.0}, "lemma44", false);
  EXPECT_EQ(rows[0].verdict, "inapplicable");
  EXPECT_EQ(rows[1].verdict, "inapplicable");
  EXPECT_EQ(rows[2].verdict, "applicable");
  EXPECT_NEAR(rows[3].margin, 1.0, 1e-8);
  EXPECT_THROW(run_sweep(c, "zeta", {1.0}, "lemma44", false), InvalidInput);
  EXPECT_THROW(run_sweep(c, "rho", {1.0}, "lemma99", false), InvalidInput);
}

TEST(Sweep, Lemma45GateNeedsNecrosisNearCapacity) {
  const auto c = load_config("lemma45_envelope");
  const auto rows = run_sweep(c, "n0", {0.5, 0.98, 1.0}, "lemma45", false);
  EXPECT_EQ(rows[0].verdict, "inapplicable");
  EXPECT_EQ(rows[1].verdict, "applicable");
  EXPECT_NEAR(rows[1].margin, 0.0, 1e-15);
  EXPECT_EQ(rows[2].verdict, "applicable");
  EXPECT_NEAR(rows[2].margin, 0.0094, 1e-15);
}

TEST(KineticsProperties, PassAndAreDeterministic) {
  const auto a = kinetics_properties(42, 20000);
  const auto b = kinetics_properties(42, 20000);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_TRUE(a[k].pass) << a[k].monitor;
    EXPECT_EQ(a[k].worst_ratio, b[k].worst_ratio);
  }
}

}  // namespace
}  // namespace gbm::app
