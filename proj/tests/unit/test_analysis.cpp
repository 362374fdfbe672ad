#include <gtest/gtest.h>

#include <cmath>

#include "gbm/analysis.hpp"
#include "gbm/errors.hpp"

namespace gbm::analysis {
namespace {

TimeSeries series_of(const DecayEnvelope& env, double scale, int n, double dt) {
  TimeSeries s;
  for (int k = 0; k < n; ++k) s.push(k * dt, scale * env(k * dt));
  return s;
}

TEST(AprioriBounds, Examples) {
  const Params p = Params::table2();
  const Grid g(4, 4, 0, 1, 0, 1);
  GridState s(0.0, ScalarField(g, 0.5), ScalarField(g, 0.2), ScalarField(g, 0.5));
  EXPECT_TRUE(apriori_bounds_monitor(s, p, 10.0, 1e-8).empty());
  s.tumor(1, 1) = p.K + 1e-3;
  const auto v = apriori_bounds_monitor(s, p, 10.0, 1e-8);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NEAR(v[0].magnitude, 1e-3, 1e-15);
  s.tumor(1, 1) = p.K + 1e-9;
  s.vasculature(0, 0) = -1e-9;
  EXPECT_TRUE(apriori_bounds_monitor(s, p, 10.0, 1e-8).empty());
  s.necrosis(2, 2) = kinetics::necrosis_bound(p, 10.0) + 1.0;
  EXPECT_EQ(apriori_bounds_monitor(s, p, 10.0, 1e-8).size(), 1u);
}

TEST(Lemma43, Examples) {
  const auto env = envelope_for_lemma43(Params::table2(), 0.1, 0.5, 0.8);
  ASSERT_TRUE(env);
  EXPECT_NEAR(env->vasculature.rate, 0.003, 1e-15);
  EXPECT_EQ(env->vasculature.amplitude, 0.5);
  EXPECT_NEAR(env->tumor.rate, 0.0015, 1e-15);
  EXPECT_NEAR(env->tumor.amplitude, 0.5 / (0.003 - 0.0015), 1e-9);
  EXPECT_FALSE(envelope_for_lemma43(Params::table3(), 0.1, 0.5, 0.8));

  Params edge = Params::table2();
  edge.gamma = 0.25;
  edge.delta = 0.25;
  EXPECT_TRUE(envelope_for_lemma43(edge, 0.1, 0.5, 0.8));
  edge.delta = std::nextafter(0.25, 0.0);
  EXPECT_FALSE(envelope_for_lemma43(edge, 0.1, 0.5, 0.8));
  EXPECT_THROW(envelope_for_lemma43(Params::table2(), 0.0, 0.5, 0.8), InvalidInput);
}

TEST(Lemma43, AmplitudeIsInitialMaxWhenLarger) {
  const auto env = envelope_for_lemma43(Params::table2(), 1.0, 0.001, 0.9);
  ASSERT_TRUE(env);
  EXPECT_EQ(env->tumor.amplitude, 0.9);
}

TEST(Lemma44, Examples) {
  const Grid g(12, 12, -2, 2, -2, 2);
  Params p = Params::table2();
  p.beta1 = 2.0;
  const auto env = envelope_for_lemma44(p, ScalarField(g, 1.0), 0.8, 0.4, 3.0);
  ASSERT_TRUE(env);
  EXPECT_NEAR(env->envelopes.tumor.rate, 1.0, 1e-8);
  EXPECT_NEAR(env->lambda1, 2.0, 1e-8);
  EXPECT_EQ(env->envelopes.tumor.amplitude, 0.8);
  EXPECT_DOUBLE_EQ(env->envelopes.vasculature.rate, 0.015);
  EXPECT_EQ(env->envelopes.vasculature.t_start, 3.0);
  EXPECT_EQ(env->envelopes.vasculature.amplitude, 0.4);
  EXPECT_FALSE(envelope_for_lemma44(Params::table2(), ScalarField(g, 1.0), 0.8, 0.4, 3.0));
  EXPECT_THROW(envelope_for_lemma44(p, ScalarField(g, 0.0), 0.8, 0.4, 3.0), InvalidInput);
}

TEST(Lemma44, TStarIsFirstQualifyingSample) {
  const Params p = Params::table2();  // gamma / K = 0.003, target 0.5 * 0.03 * 1 = 0.015
  TimeSeries t;
  t.push(0.0, 10.0);
  t.push(1.0, 6.0);
  t.push(2.0, 5.0);
  t.push(3.0, 4.0);
  EXPECT_EQ(select_t_star(t, p, 1.0), std::optional<std::size_t>(2));
  EXPECT_FALSE(select_t_star(t, p, 0.1));
}

TEST(Lemma45, Examples) {
  const Params p = Params::table2();
  const auto env = envelope_for_lemma45(p, 0.02, 0.01, 0.01);
  ASSERT_TRUE(env);
  EXPECT_NEAR(env->tumor.rate, 0.0094, 1e-15);
  EXPECT_NEAR(env->vasculature.rate, 0.02934, 1e-15);
  const auto tiny = envelope_for_lemma45(p, 1e-12, 1.0, 1.0);
  ASSERT_TRUE(tiny);
  EXPECT_NEAR(tiny->tumor.rate, 0.03, 1e-10);
  EXPECT_NEAR(tiny->vasculature.rate, 0.03, 1e-10);
  EXPECT_FALSE(envelope_for_lemma45(p, 0.5, 1.0, 1.0));
  EXPECT_THROW(envelope_for_lemma45(p, 0.0, 1.0, 1.0), InvalidInput);
  EXPECT_THROW(envelope_for_lemma45(p, 1.0, 1.0, 1.0), InvalidInput);
}

TEST(Envelopes, ArePure) {
  const Params p = Params::table2();
  EXPECT_EQ(envelope_for_lemma45(p, 0.02, 0.3, 0.2)->tumor, envelope_for_lemma45(p, 0.02, 0.3, 0.2)->tumor);
  EXPECT_EQ(envelope_for_lemma43(p, 0.1, 0.5, 0.8)->tumor, envelope_for_lemma43(p, 0.1, 0.5, 0.8)->tumor);
}

TEST(CheckEnvelope, Examples) {
  const DecayEnvelope env{2.0, 0.1, 0.0};
  auto zero = check_envelope(series_of(env, 0.0, 50, 1.0), env, 1e-3);
  EXPECT_TRUE(zero.pass);
  EXPECT_EQ(zero.worst_ratio, 0.0);

  auto equal = check_envelope(series_of(env, 1.0, 50, 1.0), env, 1e-3);
  EXPECT_TRUE(equal.pass);
  EXPECT_NEAR(equal.worst_ratio, 1.0, 1e-15);

  auto above = check_envelope(series_of(env, 1.01, 50, 1.0), env, 1e-3, "x");
  EXPECT_FALSE(above.pass);
  EXPECT_EQ(above.monitor, "x");
  EXPECT_NEAR(above.worst_ratio, 1.01, 1e-12);
}

TEST(CheckEnvelope, IgnoresSamplesBeforeStart) {
  TimeSeries s;
  s.push(0.0, 100.0);
  s.push(5.0, 1.0);
  s.push(6.0, 0.5);
  EXPECT_TRUE(check_envelope(s, {1.0, 0.1, 5.0}, 1e-3).pass);
  EXPECT_FALSE(check_envelope(s, {1.0, 0.1, 0.0}, 1e-3).pass);
}

TEST(PhiVanishing, Examples) {
  TimeSeries zero, decaying, stuck;
  for (int k = 0; k <= 100; ++k) {
    zero.push(20.0 * k, 0.0);
    decaying.push(20.0 * k, 0.5 * std::exp(-0.01 * 20.0 * k));
    stuck.push(20.0 * k, 0.2);
  }
  EXPECT_TRUE(phi_vanishing_check(std::vector<TimeSeries>{zero}, 1e-2, 2000.0).pass);
  EXPECT_TRUE(phi_vanishing_check(std::vector<TimeSeries>{decaying, zero}, 1e-2, 2000.0).pass);
  EXPECT_FALSE(phi_vanishing_check(std::vector<TimeSeries>{decaying, stuck}, 1e-2, 2000.0).pass);
  // horizon beyond the recorded run cannot pass
  EXPECT_FALSE(phi_vanishing_check(std::vector<TimeSeries>{decaying}, 1e-2, 3000.0).pass);
  TimeSeries bump = decaying;
  bump.value.back() = bump.value[bump.size() - 2] * 1.5;
  EXPECT_FALSE(phi_vanishing_check(std::vector<TimeSeries>{bump}, 1e-2, 2000.0).pass);
}

TEST(DecayCheck, FractionAndTailMonotonicity) {
  TimeSeries s;
  for (int k = 0; k <= 100; ++k) s.push(k, std::exp(-0.05 * k));
  EXPECT_TRUE(decay_check(s, 0.1, "d").pass);
  EXPECT_FALSE(decay_check(s, 0.001, "d").pass);
  s.value[95] = s.value[94] * 1.01;
  EXPECT_FALSE(decay_check(s, 0.1, "d").pass);
}

TEST(NecrosisBounded, TailIncrease) {
  TimeSeries s;
  for (int k = 0; k <= 100; ++k) s.push(k, 1.0 - std::exp(-0.5 * k));
  EXPECT_TRUE(necrosis_bounded_check(s).pass);
  TimeSeries growing;
  for (int k = 0; k <= 100; ++k) growing.push(k, 0.01 * k);
  EXPECT_FALSE(necrosis_bounded_check(growing).pass);
}

}  // namespace
}  // namespace gbm::analysis
