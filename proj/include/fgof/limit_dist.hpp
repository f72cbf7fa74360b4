#pragma once

// Limiting Gaussian processes of the residual-based test processes: their
// covariance kernels, Monte Carlo simulation of the test functionals, and
// critical values.
//
// CDF kernels live on the probability scale u in [0,1] (y = F0^{-1}(u));
// ECF kernels live on a symmetric t-grid.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fgof/null_distribution.hpp"
#include "fgof/weight_function.hpp"

namespace fgof {

enum class KernelId {
  kD1,            ///< composite normal CvM, with intercept
  kD2,            ///< composite normal CvM, no intercept
  kC11,           ///< simple ECF, with intercept
  kC12,           ///< simple ECF, no intercept
  kC21,           ///< composite normal ECF, with intercept
  kC22,           ///< composite normal ECF, no intercept
  kSimpleCdfAb1,  ///< simple-hypothesis ECDF, with intercept
  kSimpleCdfAb2,  ///< Brownian bridge
};

const char* to_string(KernelId id) noexcept;
KernelId kernel_from_string(const std::string& name);
bool is_cdf_kernel(KernelId id) noexcept;

struct KernelSpec {
  KernelId id = KernelId::kD1;
  std::optional<NullDistribution> null_dist;
  std::vector<double> grid;

  /// Equidistant grid of `points` values on [0,1] (endpoints included).
  static KernelSpec cdf(KernelId id, std::size_t points = 1000,
                        std::optional<NullDistribution> null = std::nullopt);
  /// Equidistant grid of `points` values on [-half_width, half_width].
  static KernelSpec ecf(KernelId id, std::size_t points = 601, double half_width = 6.0,
                        std::optional<NullDistribution> null = std::nullopt);

  /// Throws ArgumentError / ConfigurationError on violated invariants.
  void validate() const;
  /// Fingerprint of the null distribution ("standard_normal" when implied).
  std::string null_fingerprint() const;
};

/// Cov(G(s), G(t)).
double kernel_eval(const KernelSpec& spec, double s, double t);

/// Covariance matrix over spec.grid.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec);

struct Functional {
  enum class Kind { kCvmIntegral, kWeightedL2, kKsSup };
  Kind kind = Kind::kCvmIntegral;
  WeightFunction weight = WeightFunction::gaussian();

  static Functional cvm() { return {}; }
  static Functional weighted_l2(WeightFunction w = WeightFunction::gaussian()) {
    return {Kind::kWeightedL2, std::move(w)};
  }
  static Functional ks_sup() { return {Kind::kKsSup, WeightFunction::gaussian()}; }
  std::string fingerprint() const;
};

/// Factorizes the Gram matrix once and draws process paths on the grid.
/// Grid points with vanishing variance (e.g. u = 0, 1 or t = 0) are held at
/// zero; the remaining block is Cholesky-factorized with diagonal jitter
/// 1e-10, escalated by x10 up to 1e-6 on failure.
class GaussianProcessSampler {
 public:
  explicit GaussianProcessSampler(const KernelSpec& spec);

  /// One functional value per replication. Replication r uses its own RNG
  /// stream derived from (seed, r), so the output is independent of `threads`.
  std::vector<double> sample_functional(const Functional& functional, std::size_t reps,
                                        std::uint64_t seed, unsigned threads = 0) const;

  double jitter() const noexcept { return jitter_; }
  std::size_t active_points() const noexcept { return active_.size(); }

 private:
  KernelSpec spec_;
  std::vector<std::size_t> active_;
  Eigen::MatrixXd factor_;
  double jitter_ = 0.0;
};

std::vector<double> simulate_functional(const KernelSpec& spec, const Functional& functional,
                                        std::size_t reps, std::uint64_t seed,
                                        unsigned threads = 0);

struct CritValTable {
  std::string kernel;
  std::string null_fingerprint;
  std::string functional;
  std::map<double, double> values;     ///< level -> critical value
  std::map<double, double> mc_stderr;  ///< level -> Monte Carlo standard error
  std::size_t reps = 0;
  std::size_t grid_size = 0;
  std::uint64_t seed = 0;
};

/// Upper (1 - alpha) empirical quantile, order statistic ceil((1 - alpha) reps)
/// (1-based), with a distribution-free standard error: half the spread of the
/// order statistics +/- sqrt(reps alpha (1 - alpha)) around it.
std::pair<double, double> upper_quantile(std::span<const double> sorted, double alpha);

CritValTable tabulate(std::vector<double> samples, std::span<const double> levels);

CritValTable critical_values(const KernelSpec& spec, const Functional& functional,
                             std::span<const double> levels, std::size_t reps,
                             std::uint64_t seed, unsigned threads = 0);

/// Trapezoid weights on an arbitrary increasing grid.
Eigen::VectorXd trapezoid_weights_on(std::span<const double> grid);

enum class ExpansionKind { kD1Sum, kD2Sum, kC21Sum, kC22Sum };

const char* to_string(ExpansionKind kind) noexcept;

/// Functional of the normalized dominating sum
/// n^{-1/2} sum_i psi(eps_i, .) for the given standardized errors, evaluated
/// on the default grid of the matching kernel (CvM integral for D sums,
/// Gaussian-weighted L2 for C sums).
double asymptotic_expansion_functional(ExpansionKind kind, std::span<const double> eps,
                                       std::size_t cdf_grid = 1000, std::size_t ecf_grid = 601,
                                       double ecf_half_width = 6.0);

/// Same with n iid standard normal errors drawn from stream (seed, rep).
double asymptotic_expansion_sample(ExpansionKind kind, std::size_t n, std::uint64_t seed,
                                   std::uint64_t rep = 0);

CritValTable expansion_critical_values(ExpansionKind kind, std::size_t n,
                                       std::span<const double> levels, std::size_t reps,
                                       std::uint64_t seed, unsigned threads = 0);

}  // namespace fgof
