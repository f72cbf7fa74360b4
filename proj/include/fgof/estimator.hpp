#pragma once

// Penalized least-squares fit of the scalar-on-function linear model
//   Y_i = alpha + <X_i, beta> + eps_i
// with a discretized Sobolev roughness penalty lambda * ||beta^(m)||^2 and
// generalized cross-validation (GCV) for lambda.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fgof/hilbert.hpp"

namespace fgof {

/// WITH_INTERCEPT: alpha_hat = mean(Y) - <mean(X), beta_hat>.
/// NO_INTERCEPT: alpha_hat = 0 (appropriate only for mean-zero covariates).
enum class Regime { kWithIntercept, kNoIntercept };

const char* to_string(Regime regime) noexcept;

struct FunctionalSample {
  std::vector<GridFunction> xs;
  std::vector<double> ys;
  /// True errors, populated only for simulated data.
  std::optional<std::vector<double>> true_errors;

  std::size_t n() const noexcept { return ys.size(); }
  std::size_t p() const noexcept { return xs.empty() ? 0 : xs.front().size(); }

  /// Throws ArgumentError / DimensionError when the invariants do not hold.
  void validate() const;
};

struct FitResult {
  double alpha_hat = 0.0;
  GridFunction beta_hat = GridFunction::constant(2, 0.0);
  double lambda = 0.0;
  std::vector<double> residuals;
  double theta_hat = 0.0;
  Regime regime = Regime::kWithIntercept;
  /// Trace of the smoother matrix at the chosen lambda.
  double effective_df = 0.0;
  /// GCV criterion at the chosen lambda (NaN when not computed).
  double gcv = 0.0;
};

/// h * D^T D, where D is the (p - m) x p m-th order difference operator scaled
/// by h^-m and h = 1/(p-1). b^T P b approximates the integral of (b^(m))^2.
Eigen::MatrixXd penalty_matrix(std::size_t p, int m);

/// 50 log-spaced values from 1e-10 to 1e2.
std::vector<double> default_lambda_grid();

FitResult fit(const FunctionalSample& sample, int m, double lambda, Regime regime);

/// Fit at the lambda minimizing GCV over `lambda_grid`; exact ties go to the
/// larger lambda.
FitResult fit_gcv(const FunctionalSample& sample, int m, std::span<const double> lambda_grid,
                  Regime regime);

/// GCV(lambda) for every grid value (+inf where tr(A) >= n).
std::vector<double> gcv_curve(const FunctionalSample& sample, int m,
                              std::span<const double> lambda_grid, Regime regime);

/// (1/n) sum (Y_i - a - <X_i, b>)^2 + lambda b^T P b.
double penalized_objective(const FunctionalSample& sample, double a, const GridFunction& b,
                           int m, double lambda);

/// n^{-1/2} * sum_j (residual_j - eps_j)^2. Needs sample.true_errors.
double residual_gap_diagnostic(const FitResult& fit, const FunctionalSample& sample);

}  // namespace fgof
