#pragma once

#include <string>
#include <vector>

namespace gbm {

/// Reaction coefficients of the tumor / necrosis / vasculature kinetics.
///
/// Units: rates in 1/day, densities in cell/cm^3, diffusion in cm^2/day.
struct Params {
  double rho = 1.0;     ///< tumor proliferation rate
  double alpha = 0.03;  ///< hypoxic death rate by persistent anoxia
  double beta1 = 0.03;  ///< tumor -> necrosis conversion rate
  double beta2 = 0.03;  ///< vasculature -> necrosis conversion rate
  double gamma = 0.003; ///< vasculature proliferation rate
  double delta = 0.3;   ///< vasculature destruction by tumor action
  double K = 1.0;       ///< carrying capacity
  double kappa0 = 1.0;  ///< tumor diffusion coefficient

  /// Empty when every coefficient is strictly positive and finite.
  std::vector<std::string> problems() const;
  /// Throws InvalidInput listing every problem.
  void validate() const;

  /// Parameter set under which vasculature destruction dominates (delta >= gamma / K).
  static Params table2();
  /// Same as table2 with gamma and delta swapped, so delta < gamma / K.
  static Params table3();
};

}  // namespace gbm
