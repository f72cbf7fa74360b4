#pragma once

#include <functional>
#include <string>

namespace fgof {

/// Non-negative symmetric weight W(t) for the characteristic-function
/// statistics. W must satisfy int t^4 W(t) dt < infinity.
struct WeightFunction {
  enum class Kind { kGaussian, kCustom };

  Kind kind = Kind::kGaussian;
  std::string name = "gaussian";
  std::function<double(double)> value;
  /// int t^4 W(t) dt
  double fourth_moment = 0.0;
  /// T -> int_{|t| > T} W(t) dt (an upper bound is enough).
  std::function<double(double)> tail_mass;

  double operator()(double t) const { return value(t); }

  /// W(t) = exp(-t^2 / 2).
  static WeightFunction gaussian();

  /// Validates non-negativity and symmetry on a test grid and computes the
  /// fourth moment numerically when `fourth_moment` is not given (<= 0).
  /// Without `tail_mass` the Markov bound fourth_moment / T^4 is used.
  static WeightFunction custom(std::string name, std::function<double(double)> w,
                               double fourth_moment = 0.0,
                               std::function<double(double)> tail_mass = {});
};

}  // namespace fgof
