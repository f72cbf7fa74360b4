#include "fgof/gof_ecf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "fgof/critval_cache.hpp"
#include "fgof/error.hpp"
#include "fgof/gof_cdf.hpp"
#include "fgof/limit_dist.hpp"
#include "fgof/reference_tables.hpp"

namespace fgof {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_finite(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("empty residual vector");
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite residual");
  }
}

bool is_centred_normal(const NullDistribution& null) {
  return null.is_standard_normal || null.name.rfind("normal(", 0) == 0;
}

// n int |phi_n - phi_0|^2 e^{-t^2/2} dt for a N(0, sigma^2) null.
double closed_form_gaussian(std::span<const double> eps, double sigma) {
  const auto n = static_cast<double>(eps.size());
  const double s2 = sigma * sigma;
  CompensatedSum pairs;
  for (std::size_t j = 0; j < eps.size(); ++j) {
    for (std::size_t k = j + 1; k < eps.size(); ++k) {
      const double d = eps[j] - eps[k];
      pairs.add(std::exp(-0.5 * d * d));
    }
  }
  CompensatedSum singles;
  for (double e : eps) singles.add(std::exp(-0.5 * e * e / (1.0 + s2)));
  const double pair_total = n + 2.0 * pairs.value();
  CompensatedSum total;
  total.add(std::sqrt(kTwoPi) / n * pair_total);
  total.add(-2.0 * std::sqrt(kTwoPi / (1.0 + s2)) * singles.value());
  total.add(n * std::sqrt(kTwoPi / (1.0 + 2.0 * s2)));
  return std::max(0.0, total.value());
}

// Composite 20-point Gauss-Legendre on [-T, T], ten panels per 16 units of
// width, with T doubled until n * 4 * tail_mass(T) is below the tolerance.
template <typename Integrand>
double integrate_symmetric(Integrand&& integrand, std::size_t n, const WeightFunction& weight,
                           double tolerance) {
  double half = 8.0;
  double tail = 4.0 * static_cast<double>(n) * weight.tail_mass(half);
  while (tail > tolerance && half < 512.0) {
    half *= 2.0;
    tail = 4.0 * static_cast<double>(n) * weight.tail_mass(half);
  }
  if (tail > tolerance) {
    std::ostringstream msg;
    msg << "ECF quadrature did not converge: tail bound " << tail << " exceeds tolerance "
        << tolerance << " at |t| <= " << half;
    throw NumericalError(msg.str());
  }
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const int panels = static_cast<int>(10.0 * half / 8.0);
  const double width = 2.0 * half / panels;
  CompensatedSum acc;
  for (int p = 0; p < panels; ++p) {
    const double a = -half + p * width;
    acc.add(Rule::integrate(integrand, a, a + width));
  }
  return acc.value();
}

}  // namespace

std::pair<double, double> ecf(std::span<const double> residuals, double t) {
  require_finite(residuals);
  CompensatedSum c;
  CompensatedSum s;
  for (double e : residuals) {
    c.add(std::cos(t * e));
    s.add(std::sin(t * e));
  }
  const auto n = static_cast<double>(residuals.size());
  return {c.value() / n, s.value() / n};
}

double ecf_simple_statistic_quadrature(std::span<const double> residuals,
                                       const NullDistribution& null, const WeightFunction& weight,
                                       double tolerance) {
  require_finite(residuals);
  const auto n = static_cast<double>(residuals.size());
  auto integrand = [&](double t) {
    const auto [re, im] = ecf(residuals, t);
    const double dr = re - null_char_real(null, t);
    const double di = im - null_char_imag(null, t);
    return (dr * dr + di * di) * weight(t);
  };
  return n * integrate_symmetric(integrand, residuals.size(), weight, tolerance / n);
}

double ecf_simple_statistic_real_form(std::span<const double> residuals,
                                      const NullDistribution& null, const WeightFunction& weight,
                                      double tolerance) {
  require_finite(residuals);
  const auto n = static_cast<double>(residuals.size());
  auto integrand = [&](double t) {
    const auto [re, im] = ecf(residuals, t);
    const double d = re + im - null_char_real(null, t) - null_char_imag(null, t);
    return d * d * weight(t);
  };
  return n * integrate_symmetric(integrand, residuals.size(), weight, tolerance / n);
}

double ecf_simple_statistic(std::span<const double> residuals, const NullDistribution& null,
                            const WeightFunction& weight) {
  require_finite(residuals);
  if (weight.kind == WeightFunction::Kind::kGaussian && is_centred_normal(null)) {
    return closed_form_gaussian(residuals, std::sqrt(null.variance));
  }
  return ecf_simple_statistic_quadrature(residuals, null, weight);
}

double ecf_composite_normal_statistic(std::span<const double> residuals,
                                      const WeightFunction& weight) {
  if (residuals.size() < 2) throw ArgumentError("composite test needs n >= 2");
  const double theta = residual_scale(residuals);
  std::vector<double> scaled(residuals.begin(), residuals.end());
  for (double& e : scaled) e /= theta;
  return ecf_simple_statistic(scaled, NullDistribution::standard_normal(), weight);
}

EcfHypothesis EcfHypothesis::composite_normal(WeightFunction weight) {
  EcfHypothesis h;
  h.null = NullDistribution::standard_normal();
  h.weight = std::move(weight);
  return h;
}

EcfHypothesis EcfHypothesis::simple(NullDistribution null, WeightFunction weight) {
  EcfHypothesis h;
  h.kind = Kind::kSimple;
  h.null = std::move(null);
  h.weight = std::move(weight);
  return h;
}

TestOutcome run_ecf_test(std::span<const double> residuals, const EcfHypothesis& hypothesis,
                         TestRegime regime, std::span<const double> levels,
                         const CritValSource& source) {
  if (levels.empty()) throw ArgumentError("no test levels given");
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) throw ArgumentError("levels must lie in (0,1)");
  }
  const bool composite = hypothesis.kind == EcfHypothesis::Kind::kCompositeNormal;
  TestOutcome out;
  out.regime = regime;
  out.n = residuals.size();
  out.family = composite ? StatisticFamily::kEcfCompositeNormal : StatisticFamily::kEcfSimple;
  out.statistic = composite ? ecf_composite_normal_statistic(residuals, hypothesis.weight)
                            : ecf_simple_statistic(residuals, hypothesis.null, hypothesis.weight);

  KernelId kernel;
  if (composite) {
    kernel = regime == TestRegime::kAb1 ? KernelId::kC21 : KernelId::kC22;
  } else {
    kernel = regime == TestRegime::kAb1 ? KernelId::kC11 : KernelId::kC12;
  }
  const bool published = hypothesis.weight.kind == WeightFunction::Kind::kGaussian &&
                         (composite || hypothesis.null.is_standard_normal);

  if (source.kind == CritValSource::Kind::kBuiltin && published) {
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
    std::optional<NullDistribution> null;
    if (!composite) null = hypothesis.null;
    const KernelSpec spec =
        KernelSpec::ecf(kernel, source.ecf_grid, source.ecf_half_width, std::move(null));
    const Functional functional = Functional::weighted_l2(hypothesis.weight);
    const CritValTable table = simulated_critical_values(spec, functional, levels, source);
    for (double level : levels) out.critical_values[level] = table.values.at(level);
    out.critval_provenance = cache_key(spec, functional, source.reps, source.seed);
  }
  decide(out);
  return out;
}

}  // namespace fgof
