#pragma once

#include <functional>
#include <string>

namespace fgof {

/// A fully specified, centred error distribution F0 used by the simple
/// hypotheses and by the F0-dependent limit kernels.
struct NullDistribution {
  std::string name;  ///< stable fingerprint, e.g. "normal(sigma=1)"
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  std::function<double(double)> quantile;
  /// z -> E[eps0 * I{eps0 <= z}]
  std::function<double(double)> mean_partial;
  double variance = 1.0;
  /// z -> E[cos(z eps0)] and E[sin(z eps0)]; empty when not known in closed
  /// form (characteristic_function() then integrates numerically).
  std::function<double(double)> char_real;
  std::function<double(double)> char_imag;
  bool is_standard_normal = false;

  static NullDistribution standard_normal();
  static NullDistribution normal(double sigma);
  /// Student-t with `df` > 2 degrees of freedom, multiplied by `scale`.
  static NullDistribution student_t(double df, double scale = 1.0);
  /// Laplace with scale b (variance 2 b^2).
  static NullDistribution laplace(double b);

  /// Parses "normal", "normal:SIGMA", "t:DF", "t:DF:SCALE", "laplace:B".
  static NullDistribution parse(const std::string& text);
};

/// E[cos(t eps0)], E[sin(t eps0)], closed form when available, else by
/// quadrature against the density.
double null_char_real(const NullDistribution& null, double t);
double null_char_imag(const NullDistribution& null, double t);

/// Numerical E[eps0 I{eps0 <= z}] from the density (adaptive Gauss-Kronrod).
double numeric_mean_partial(const std::function<double(double)>& pdf, double z);

}  // namespace fgof
