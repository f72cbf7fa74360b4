#pragma once

// Goodness-of-fit statistics built on the residual empirical distribution
// function: Kolmogorov-Smirnov and Cramer-von Mises against a fixed F0, and
// the Cramer-von Mises test for centred Gaussian errors with estimated scale.

#include <span>
#include <vector>

#include "fgof/critval_source.hpp"
#include "fgof/null_distribution.hpp"
#include "fgof/test_outcome.hpp"

namespace fgof {

/// (1/n) #{i : values[i] <= z}.
double ecdf(std::span<const double> values, double z);

/// sqrt(n) sup_z |F_n(z) - F0(z)|, exact over the order statistics.
double ks_statistic(std::span<const double> residuals, const NullDistribution& null);

/// n int (F_n - F0)^2 dF0 = 1/(12n) + sum_i (U_(i) - (2i-1)/(2n))^2.
double cvm_simple(std::span<const double> residuals, const NullDistribution& null);

/// Closed-form CvM of already-transformed values U_i in [0,1] against U[0,1].
double cvm_uniform(std::span<const double> u);

/// sqrt(mean(residuals^2)); throws DegenerateScaleError when it is zero.
double residual_scale(std::span<const double> residuals);

/// n int (F_n(theta y) - Phi(y))^2 dPhi(y) with theta^2 = mean(residuals^2).
double cvm_composite_normal(std::span<const double> residuals);

enum class CdfStatistic { kCvm, kKs };

struct CdfHypothesis {
  enum class Kind { kSimple, kCompositeNormal };
  Kind kind = Kind::kCompositeNormal;
  NullDistribution null;  ///< used for kSimple only
  CdfStatistic statistic = CdfStatistic::kCvm;

  static CdfHypothesis composite_normal();
  static CdfHypothesis simple(NullDistribution null, CdfStatistic statistic = CdfStatistic::kCvm);
};

/// Computes the statistic and compares it to the critical values of the
/// matching limit distribution. Built-in constants exist only for the
/// composite Gaussian CvM test; simple hypotheses need a simulated source.
TestOutcome run_cdf_test(std::span<const double> residuals, const CdfHypothesis& hypothesis,
                         TestRegime regime, std::span<const double> levels,
                         const CritValSource& source);

}  // namespace fgof
