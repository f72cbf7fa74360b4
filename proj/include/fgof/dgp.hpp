#pragma once

// Simulation design: random-sinusoid covariates, Gamma-density slope and the
// error families used in the power study.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fgof/estimator.hpp"
#include "fgof/hilbert.hpp"
#include "fgof/rng.hpp"

namespace fgof {

/// MEAN_NONZERO centres each summand by a constant (the sine expectation taken
/// at t = 1), so E[X(t)] != 0; MEAN_ZERO centres by the exact mean function.
enum class CovariateVariant { kMeanNonzero, kMeanZero };

struct ErrorFamily {
  enum class Kind { kGaussianStd, kSkewNormal, kStudentT };
  Kind kind = Kind::kGaussianStd;
  double parameter = 0.0;  ///< delta for kSkewNormal, df for kStudentT

  static ErrorFamily gaussian() { return {}; }
  static ErrorFamily skew_normal(double delta) { return {Kind::kSkewNormal, delta}; }
  static ErrorFamily student_t(double df) { return {Kind::kStudentT, df}; }
  std::string describe() const;
};

const char* to_string(CovariateVariant variant) noexcept;

struct DgpConfig {
  std::size_t n = 100;
  std::size_t p = 300;
  CovariateVariant variant = CovariateVariant::kMeanNonzero;
  ErrorFamily errors;
  std::uint64_t seed = 1;
  /// Dataset index; covariates and errors of dataset k come from separate
  /// streams derived from (seed, k).
  std::uint64_t stream = 0;
  /// Zero the errors (noiseless responses).
  bool zero_errors = false;

  void validate() const;
};

/// b^a / Gamma(a) t^{a-1} e^{-bt} on the closed grid over [0,1].
GridFunction gamma_coefficient(double a, double b, std::size_t p);

/// Centring function c(t) subtracted from each of the five summands.
double covariate_centering(CovariateVariant variant, double t);

GridFunction draw_covariate(CovariateVariant variant, std::size_t p, Engine& rng);

/// Location and scale that standardize the skew-normal with shape 5 delta.
double skew_normal_location(double delta);
double skew_normal_scale(double delta);

std::vector<double> draw_errors(const ErrorFamily& family, std::size_t n, Engine& rng);

/// Y_i = <X_i, gamma_{3,1/3}> + eps_i, with true errors attached.
FunctionalSample generate(const DgpConfig& config);

}  // namespace fgof
