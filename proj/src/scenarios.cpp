#include <algorithm>

#include "gbm/config.hpp"

namespace gbm::config {

namespace {

const char* const kTable2Params = R"([params]
rho = 1
alpha = 0.03
beta1 = 0.03
beta2 = 0.03
gamma = 0.003
delta = 0.3
K = 1
kappa0 = 1
)";

const char* const kTable3Params = R"([params]
rho = 1
alpha = 0.03
beta1 = 0.03
beta2 = 0.03
gamma = 0.3
delta = 0.03
K = 1
kappa0 = 1
)";

const char* const kDomain = R"(
[grid]
nx = 64
ny = 64
x0 = -2
x1 = 2
y0 = -2
y1 = 2
)";

std::string figure(const std::string& name, const char* params, const std::string& bumps) {
  return "[scenario]\nname = " + name + "\n\n" + params + kDomain +
         "\n[initial]\ntumor_bumps = " + bumps +
         "\ntumor_amplitude = 0.8\ntumor_sigma = 0.3\nnecrosis = 0\nvasculature = 0.5\n"
         "\n[run]\nt_end = 2000\ndt = 0.1\n"
         "\n[output]\ndirectory = out/" + name +
         "\nsample_interval = 10\nsnapshot_interval = 500\nmonitor_points = " + bumps +
         "; 1.9,1.9\n"
         "\n[checks]\nmonitors = apriori, necrosis_monotone, decay, necrosis_bounded, phi_vanishing\n";
}

std::vector<std::pair<std::string, std::string>> build() {
  const std::string one = "0,0";
  const std::string two = "-1,0; 1,0";
  const std::string three = "-1,-1; 1,-1; 0,1";
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("table2_one_tumor", figure("table2_one_tumor", kTable2Params, one));
  out.emplace_back("table2_two_tumor", figure("table2_two_tumor", kTable2Params, two));
  out.emplace_back("table2_three_tumor", figure("table2_three_tumor", kTable2Params, three));
  out.emplace_back("table3_one_tumor", figure("table3_one_tumor", kTable3Params, one));
  out.emplace_back("table3_two_tumor", figure("table3_two_tumor", kTable3Params, two));
  out.emplace_back("table3_three_tumor", figure("table3_three_tumor", kTable3Params, three));

  out.emplace_back("uniform_ode_match", std::string("[scenario]\nname = uniform_ode_match\n\n") +
                                            kTable2Params + R"(
[grid]
nx = 16
ny = 16
x0 = -2
x1 = 2
y0 = -2
y1 = 2

[initial]
tumor_background = 0.5
necrosis = 0
vasculature = 0.5

[run]
t_end = 50
dt = 0.01

[output]
directory = out/uniform_ode_match
sample_interval = 1

[checks]
monitors = apriori, necrosis_monotone

[ode]
T0 = 0.5
N0 = 0
Phi0 = 0.5
)");

  out.emplace_back("lemma43_envelope", std::string("[scenario]\nname = lemma43_envelope\n\n") +
                                           kTable2Params + kDomain + R"(
[initial]
tumor_bumps = 0,0
tumor_amplitude = 0.8
tumor_sigma = 0.3
necrosis = 0.1
vasculature = 0.5

[run]
t_end = 2000
dt = 0.1

[output]
directory = out/lemma43_envelope
sample_interval = 10

[checks]
monitors = apriori, necrosis_monotone, lemma43, necrosis_bounded
)");

  out.emplace_back("lemma44_envelope", R"([scenario]
name = lemma44_envelope

[params]
rho = 1
alpha = 0.03
beta1 = 2
beta2 = 0.03
gamma = 0.003
delta = 0.3
K = 1
kappa0 = 1
)" + std::string(kDomain) + R"(
[initial]
tumor_bumps = 0,0
tumor_amplitude = 0.8
tumor_sigma = 0.3
necrosis = 1
vasculature = 0.5

[run]
t_end = 100
dt = 0.01

[output]
directory = out/lemma44_envelope
sample_interval = 0.5

[checks]
monitors = apriori, necrosis_monotone, lemma44
)");

  out.emplace_back("lemma45_envelope", std::string("[scenario]\nname = lemma45_envelope\n\n") +
                                           kTable2Params + kDomain + R"(
[initial]
tumor_bumps = 0,0
tumor_amplitude = 0.01
tumor_sigma = 0.3
necrosis = 0.98
vasculature = 0.01

[run]
t_end = 2000
dt = 0.1

[output]
directory = out/lemma45_envelope
sample_interval = 10

[checks]
monitors = apriori, necrosis_monotone, lemma45, necrosis_bounded
lemma45_eps = 0.02
)");
  return out;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& bundled_scenarios() {
  static const auto scenarios = build();
  return scenarios;
}

std::optional<std::string> bundled_scenario(const std::string& name) {
  const auto& all = bundled_scenarios();
  auto it = std::find_if(all.begin(), all.end(), [&](const auto& s) { return s.first == name; });
  if (it == all.end()) return std::nullopt;
  return it->second;
}

}  // namespace gbm::config
