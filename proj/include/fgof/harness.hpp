#pragma once

// Experiment runner: rejection-rate studies over the simulation design,
// critical-value tables, and tests on user-supplied data.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgof/critval_source.hpp"
#include "fgof/dgp.hpp"
#include "fgof/limit_dist.hpp"
#include "fgof/test_outcome.hpp"

namespace fgof {

enum class TestFamily { kCvm, kEcf };

/// AB1: intercept model. AB2: no intercept. MISSPECIFIED_AB2: centre Y and X by
/// their sample means and fit without intercept, then use the AB2 critical values.
enum class FitRegime { kAb1, kAb2, kMisspecifiedAb2 };

const char* to_string(TestFamily family) noexcept;
const char* to_string(FitRegime regime) noexcept;
TestFamily test_family_from_string(const std::string& text);
FitRegime fit_regime_from_string(const std::string& text);

struct ExperimentPlan {
  std::vector<std::size_t> ns{100};
  CovariateVariant variant = CovariateVariant::kMeanNonzero;
  ErrorFamily::Kind error_kind = ErrorFamily::Kind::kSkewNormal;
  /// delta (skew-normal) or df (Student-t) values; ignored for Gaussian errors.
  std::vector<double> parameters{0.0};
  std::vector<TestFamily> tests{TestFamily::kCvm};
  FitRegime regime = FitRegime::kAb1;
  std::size_t replications = 500;
  std::vector<double> levels{0.05};
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t p = 300;
  int m = 3;
  CritValSource critvals = CritValSource::builtin();
  /// Label carried into the output rows.
  std::string block = "main";
  /// CSV destination; empty for none. Checked for writability in validate().
  std::string output_path;

  void validate() const;
};

struct RejectionCell {
  std::string block;
  TestFamily test = TestFamily::kCvm;
  std::size_t n = 0;
  double parameter = 0.0;
  double level = 0.05;
  std::size_t rejections = 0;
  std::size_t valid = 0;     ///< replications that produced a statistic
  std::size_t failures = 0;  ///< estimator or degenerate-scale failures
  std::optional<double> published;

  /// Percentage of valid replications that rejected.
  double percent() const;
  /// Binomial standard error of percent(), in percentage points.
  double se() const;
};

struct RejectionTable {
  std::string title;
  std::size_t replications = 0;
  std::vector<RejectionCell> cells;

  const RejectionCell* find(const std::string& block, TestFamily test, std::size_t n,
                            double parameter, double level = 0.05) const;
  void append(const RejectionTable& other);
  void write_csv(const std::string& path) const;
};

RejectionTable run_experiment(const ExperimentPlan& plan);

enum class ReproduceScale { kFull, kDesk };

/// T7: CvM and ECF under skew-normal errors. T8: Student-t errors. T9: the
/// no-intercept study with mean-zero covariates and the centred misspecified
/// fit with nonzero-mean covariates. T10: ECF under skew-normal errors.
RejectionTable reproduce(const std::string& table_id, ReproduceScale scale, std::uint64_t seed,
                         unsigned threads = 0,
                         const CritValSource& critvals = CritValSource::builtin());

struct CritValComparison {
  int table = 0;
  KernelId kernel = KernelId::kD1;
  double level = 0.0;
  double value = 0.0;
  double mc_stderr = 0.0;
  std::optional<double> published;
  double tolerance = 0.0;
  bool pass = false;
};

/// Simulates the six tabled kernels at `levels` (default grids) and writes
/// table<k>.csv into `output_dir` (skipped when empty). Each row carries the
/// published constant and a pass flag at tolerance max(3 se, 2% relative).
std::vector<CritValComparison> emit_critval_tables(std::span<const double> levels,
                                                   std::size_t reps, std::uint64_t seed,
                                                   const std::string& output_dir,
                                                   unsigned threads = 0,
                                                   const std::string& cache_path = {});

struct DatasetOptions {
  bool header = false;
  FitRegime regime = FitRegime::kAb1;
  std::vector<TestFamily> tests{TestFamily::kCvm, TestFamily::kEcf};
  std::vector<double> levels{0.15, 0.1, 0.05, 0.025, 0.01};
  int m = 3;
  CritValSource critvals = CritValSource::builtin();
  std::uint64_t seed = 0;
  /// JSON report destination; empty for none.
  std::string report_path;
};

/// Fits the model to the X (n x p CSV) and Y (n values) files, runs the
/// selected composite normality tests and returns the JSON report text.
std::string test_dataset(const std::string& x_path, const std::string& y_path,
                         const DatasetOptions& options);

/// Critical values for the composite normality tests of `family` in `regime`.
std::map<double, double> composite_critical_values(TestFamily family, TestRegime regime,
                                                   std::span<const double> levels,
                                                   const CritValSource& source,
                                                   std::string* provenance = nullptr);

}  // namespace fgof
