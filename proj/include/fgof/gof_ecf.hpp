#pragma once

// Goodness-of-fit statistics built on the residual empirical characteristic
// function phi_n(t) = (1/n) sum_j exp(i t e_j), weighted L2 distance to the
// null characteristic function.

#include <span>
#include <utility>

#include "fgof/critval_source.hpp"
#include "fgof/null_distribution.hpp"
#include "fgof/test_outcome.hpp"
#include "fgof/weight_function.hpp"

namespace fgof {

/// (mean cos(t e_j), mean sin(t e_j)).
std::pair<double, double> ecf(std::span<const double> residuals, double t);

/// n int |phi_n(t) - phi0(t)|^2 W(t) dt. Closed form for Gaussian W and a
/// centred normal null, otherwise quadrature.
double ecf_simple_statistic(std::span<const double> residuals, const NullDistribution& null,
                            const WeightFunction& weight = WeightFunction::gaussian());

/// Same statistic evaluated by quadrature whatever the weight and null.
/// Throws NumericalError when the tail bound exceeds `tolerance`.
double ecf_simple_statistic_quadrature(std::span<const double> residuals,
                                       const NullDistribution& null, const WeightFunction& weight,
                                       double tolerance = 1e-9);

/// The real expansion n int (mean(sin + cos) - phi01 - phi02)^2 W dt; equal to
/// the modulus form for symmetric W. Kept as an independent evaluation path.
double ecf_simple_statistic_real_form(std::span<const double> residuals,
                                      const NullDistribution& null, const WeightFunction& weight,
                                      double tolerance = 1e-9);

/// Statistic of the residuals divided by theta_hat against exp(-t^2/2).
double ecf_composite_normal_statistic(std::span<const double> residuals,
                                      const WeightFunction& weight = WeightFunction::gaussian());

struct EcfHypothesis {
  enum class Kind { kSimple, kCompositeNormal };
  Kind kind = Kind::kCompositeNormal;
  NullDistribution null;
  WeightFunction weight = WeightFunction::gaussian();

  static EcfHypothesis composite_normal(WeightFunction weight = WeightFunction::gaussian());
  static EcfHypothesis simple(NullDistribution null,
                              WeightFunction weight = WeightFunction::gaussian());
};

/// Built-in constants exist for Gaussian W with a standard normal simple null
/// or the composite normal hypothesis.
TestOutcome run_ecf_test(std::span<const double> residuals, const EcfHypothesis& hypothesis,
                         TestRegime regime, std::span<const double> levels,
                         const CritValSource& source);

}  // namespace fgof
