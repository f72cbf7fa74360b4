#include "fgof/gof_cdf.hpp"

#include <algorithm>
#include <cmath>

#include "fgof/critval_cache.hpp"
#include "fgof/error.hpp"
#include "fgof/limit_dist.hpp"
#include "fgof/reference_tables.hpp"

namespace fgof {

namespace {

void require_finite(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("empty residual vector");
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite residual");
  }
}

std::vector<double> sorted_pit(std::span<const double> residuals,
                               const std::function<double(double)>& cdf) {
  std::vector<double> u(residuals.size());
  std::transform(residuals.begin(), residuals.end(), u.begin(), cdf);
  std::stable_sort(u.begin(), u.end());
  return u;
}

}  // namespace

double ecdf(std::span<const double> values, double z) {
  if (values.empty()) throw ArgumentError("ecdf of an empty sample");
  const auto below = std::count_if(values.begin(), values.end(), [z](double v) { return v <= z; });
  return static_cast<double>(below) / static_cast<double>(values.size());
}

double ks_statistic(std::span<const double> residuals, const NullDistribution& null) {
  require_finite(residuals);
  const std::vector<double> u = sorted_pit(residuals, null.cdf);
  const auto n = static_cast<double>(u.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    sup = std::max({sup, std::abs(k / n - u[i]), std::abs((k - 1.0) / n - u[i])});
  }
  return std::sqrt(n) * sup;
}

double cvm_uniform(std::span<const double> u_in) {
  if (u_in.empty()) throw ArgumentError("CvM statistic of an empty sample");
  std::vector<double> u(u_in.begin(), u_in.end());
  std::stable_sort(u.begin(), u.end());
  const auto n = static_cast<double>(u.size());
  double acc = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n);
    acc += d * d;
  }
  return acc;
}

double cvm_simple(std::span<const double> residuals, const NullDistribution& null) {
  require_finite(residuals);
  return cvm_uniform(sorted_pit(residuals, null.cdf));
}

double residual_scale(std::span<const double> residuals) {
  require_finite(residuals);
  double ss = 0.0;
  for (double r : residuals) ss += r * r;
  const double theta = std::sqrt(ss / static_cast<double>(residuals.size()));
  if (!(theta > 0.0)) {
    throw DegenerateScaleError(
        "residual scale is zero: every residual vanishes, so the scale-standardized "
        "statistic is undefined (a constant or perfectly fitted response?)");
  }
  return theta;
}

double cvm_composite_normal(std::span<const double> residuals) {
  if (residuals.size() < 2) throw ArgumentError("composite test needs n >= 2");
  const double theta = residual_scale(residuals);
  const NullDistribution normal = NullDistribution::standard_normal();
  std::vector<double> u(residuals.size());
  std::transform(residuals.begin(), residuals.end(), u.begin(),
                 [&](double r) { return normal.cdf(r / theta); });
  return cvm_uniform(u);
}

CdfHypothesis CdfHypothesis::composite_normal() { return {}; }

CdfHypothesis CdfHypothesis::simple(NullDistribution null, CdfStatistic statistic) {
  CdfHypothesis h;
  h.kind = Kind::kSimple;
  h.null = std::move(null);
  h.statistic = statistic;
  return h;
}

TestOutcome run_cdf_test(std::span<const double> residuals, const CdfHypothesis& hypothesis,
                         TestRegime regime, std::span<const double> levels,
                         const CritValSource& source) {
  if (levels.empty()) throw ArgumentError("no test levels given");
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) throw ArgumentError("levels must lie in (0,1)");
  }
  TestOutcome out;
  out.regime = regime;
  out.n = residuals.size();

  if (hypothesis.kind == CdfHypothesis::Kind::kCompositeNormal) {
    if (hypothesis.statistic == CdfStatistic::kKs) {
      throw ArgumentError("the Kolmogorov-Smirnov test is available for simple hypotheses only");
    }
    out.family = StatisticFamily::kCvmCompositeNormal;
    out.statistic = cvm_composite_normal(residuals);
    const KernelId kernel = regime == TestRegime::kAb1 ? KernelId::kD1 : KernelId::kD2;
    if (source.kind == CritValSource::Kind::kBuiltin) {
      for (double level : levels) {
        const auto c = reference::critval(kernel, level);
        if (!c) {
          throw ArgumentError("no built-in critical value at level " + std::to_string(level) +
                              "; use simulated critical values");
        }
        out.critical_values[level] = *c;
      }
      out.critval_provenance = "builtin";
    } else {
      const KernelSpec spec = KernelSpec::cdf(kernel, source.cdf_grid);
      const CritValTable table =
          simulated_critical_values(spec, Functional::cvm(), levels, source);
      for (double level : levels) out.critical_values[level] = table.values.at(level);
      out.critval_provenance = cache_key(spec, Functional::cvm(), source.reps, source.seed);
    }
  } else {
    const bool ks = hypothesis.statistic == CdfStatistic::kKs;
    out.family = ks ? StatisticFamily::kKs : StatisticFamily::kCvmSimple;
    out.statistic = ks ? ks_statistic(residuals, hypothesis.null)
                       : cvm_simple(residuals, hypothesis.null);
    // No published constants exist for simple hypotheses: always simulated.
    const KernelId kernel =
        regime == TestRegime::kAb1 ? KernelId::kSimpleCdfAb1 : KernelId::kSimpleCdfAb2;
    const KernelSpec spec = KernelSpec::cdf(kernel, source.cdf_grid, hypothesis.null);
    const Functional functional = ks ? Functional::ks_sup() : Functional::cvm();
    const CritValTable table = simulated_critical_values(spec, functional, levels, source);
    for (double level : levels) out.critical_values[level] = table.values.at(level);
    out.critval_provenance = cache_key(spec, functional, source.reps, source.seed);
  }
  decide(out);
  return out;
}

}  // namespace fgof
