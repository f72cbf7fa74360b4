#pragma once

// Published asymptotic critical values (levels 0.15, 0.1, 0.05, 0.025, 0.01)
// and rejection percentages of the simulation study.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "fgof/limit_dist.hpp"

namespace fgof::reference {

inline constexpr std::array<double, 5> kLevels{0.15, 0.1, 0.05, 0.025, 0.01};

struct CritValRow {
  int table;
  KernelId kernel;
  std::array<double, 5> values;
};

inline const std::array<CritValRow, 6>& critval_tables() {
  static const std::array<CritValRow, 6> rows{{
      {1, KernelId::kD1, {0.089, 0.102, 0.125, 0.147, 0.177}},
      {2, KernelId::kD2, {0.261, 0.324, 0.437, 0.560, 0.729}},
      {3, KernelId::kC11, {1.052, 1.272, 1.647, 2.036, 2.462}},
      {4, KernelId::kC12, {1.891, 2.277, 2.932, 3.601, 4.603}},
      {5, KernelId::kC21, {0.604, 0.727, 0.938, 1.177, 1.444}},
      {6, KernelId::kC22, {1.441, 1.833, 2.491, 3.171, 3.881}},
  }};
  return rows;
}

/// Critical value for a tabled kernel and level, if published.
inline std::optional<double> critval(KernelId kernel, double level) {
  for (const auto& row : critval_tables()) {
    if (row.kernel != kernel) continue;
    for (std::size_t k = 0; k < kLevels.size(); ++k) {
      if (kLevels[k] == level) return row.values[k];
    }
  }
  return std::nullopt;
}

/// Rejection percentages at level 5% with 500 replications, one entry per
/// parameter value, for n = 100 and n = 200.
struct RejectionRow {
  std::vector<double> parameters;
  std::vector<double> n100;
  std::vector<double> n200;
};

// CvM test, skew-normal errors, parameter delta.
inline const RejectionRow& cvm_skew_normal() {
  static const RejectionRow r{{0, 0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 1},
                              {4.8, 5.4, 6.4, 12.8, 25.6, 51, 74.6, 81.2},
                              {4.6, 5.6, 7.2, 20.2, 48, 87, 97.4, 99.4}};
  return r;
}

// CvM test, Student-t errors, parameter df.
inline const RejectionRow& cvm_student_t() {
  static const RejectionRow r{{3, 4, 5, 6, 7},
                              {81, 54, 35.6, 26.6, 24.4},
                              {96.6, 85.6, 64.8, 49.4, 39.6}};
  return r;
}

// CvM test after centering and fitting without intercept, mean-zero covariates.
inline const RejectionRow& misspecified_mean_zero() {
  static const RejectionRow r{{0, 0.2, 0.5, 0.8, 1},
                              {2.4, 2.6, 6, 12.8, 18.4},
                              {2.6, 3, 14.8, 30.4, 41.4}};
  return r;
}

// Same protocol with covariates of nonzero mean.
inline const RejectionRow& misspecified_mean_nonzero() {
  static const RejectionRow r{{0, 0.2, 0.5, 0.8, 1},
                              {0, 0, 0.2, 2, 4},
                              {0, 0, 2.4, 20, 37.6}};
  return r;
}

// ECF test, skew-normal errors.
inline const RejectionRow& ecf_skew_normal() {
  static const RejectionRow r{{0, 0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 1},
                              {4.4, 5.6, 9.2, 15.6, 34.8, 65.4, 81.8, 89.6},
                              {4.4, 5.6, 9.2, 30.8, 60.6, 93.2, 99.4, 100}};
  return r;
}

// ECF test, Student-t errors.
inline const RejectionRow& ecf_student_t() {
  static const RejectionRow r{{3, 4, 5, 6, 7},
                              {85.2, 63.4, 44, 34.6, 28},
                              {97.6, 86, 71.6, 55.8, 48}};
  return r;
}

/// Published percentage for (row, n, parameter), if present.
inline std::optional<double> lookup(const RejectionRow& row, std::size_t n, double parameter) {
  const std::vector<double>* values = n == 100 ? &row.n100 : n == 200 ? &row.n200 : nullptr;
  if (values == nullptr) return std::nullopt;
  for (std::size_t k = 0; k < row.parameters.size(); ++k) {
    if (std::abs(row.parameters[k] - parameter) < 1e-12) return (*values)[k];
  }
  return std::nullopt;
}

}  // namespace fgof::reference
