#include "fgof/dgp.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "fgof/error.hpp"

namespace fgof {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string ErrorFamily::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kGaussianStd: out << "gaussian"; break;
    case Kind::kSkewNormal: out << "skew_normal(delta=" << parameter << ")"; break;
    case Kind::kStudentT: out << "student_t(df=" << parameter << ")"; break;
  }
  return out.str();
}

const char* to_string(CovariateVariant variant) noexcept {
  return variant == CovariateVariant::kMeanZero ? "MEAN_ZERO" : "MEAN_NONZERO";
}

void DgpConfig::validate() const {
  if (n < 2) throw ConfigurationError("DGP needs n >= 2");
  if (p < 2) throw ConfigurationError("DGP needs p >= 2");
  if (errors.kind == ErrorFamily::Kind::kSkewNormal && !(errors.parameter >= 0.0)) {
    throw ConfigurationError("skew-normal delta must be >= 0");
  }
  if (errors.kind == ErrorFamily::Kind::kStudentT && !(errors.parameter >= 1.0)) {
    throw ArgumentError("Student-t degrees of freedom must be >= 1");
  }
}

GridFunction gamma_coefficient(double a, double b, std::size_t p) {
  if (!(a > 0.0) || !(b > 0.0)) throw ArgumentError("Gamma density needs a > 0 and b > 0");
  const double log_norm = a * std::log(b) - boost::math::lgamma(a);
  return GridFunction::sample(p, [&](double t) {
    if (t <= 0.0) {
      if (a > 1.0) return 0.0;
      if (a == 1.0) return b;
      return std::numeric_limits<double>::infinity();
    }
    return std::exp(log_norm + (a - 1.0) * std::log(t) - b * t);
  });
}

double covariate_centering(CovariateVariant variant, double t) {
  // E[B sin(w (5 - B))] for B ~ U[0,5] equals 1/w - sin(5w) / (5 w^2).
  const double w = 2.0 * kPi * (variant == CovariateVariant::kMeanZero ? t : 1.0);
  double sine_mean;
  if (std::abs(w) < 1e-3) {
    sine_mean = 25.0 * w / 6.0 - 625.0 * w * w * w / 120.0;
  } else {
    sine_mean = 1.0 / w - std::sin(5.0 * w) / (5.0 * w * w);
  }
  return sine_mean - kPi;
}

GridFunction draw_covariate(CovariateVariant variant, std::size_t p, Engine& rng) {
  std::uniform_real_distribution<double> unif_b(0.0, 5.0);
  std::uniform_real_distribution<double> unif_m(0.0, 2.0 * kPi);
  double b[5];
  double m[5];
  for (int l = 0; l < 5; ++l) {
    b[l] = unif_b(rng);
    m[l] = unif_m(rng);
  }
  return GridFunction::sample(p, [&](double t) {
    const double c = covariate_centering(variant, t);
    double acc = 0.0;
    for (int l = 0; l < 5; ++l) acc += b[l] * std::sin(t * (5.0 - b[l]) * 2.0 * kPi) - m[l] - c;
    return 0.5 * acc;
  });
}

double skew_normal_location(double delta) {
  const double a2 = 25.0 * delta * delta;
  const double a4 = a2 * a2;
  return -std::sqrt(2.0 * kPi * (a2 + a4) /
                    (kPi * kPi + (2.0 * kPi * kPi - 2.0 * kPi) * a2 + (kPi * kPi - 2.0 * kPi) * a4));
}

double skew_normal_scale(double delta) {
  const double a2 = 25.0 * delta * delta;
  return std::sqrt(kPi * (1.0 + a2) / (kPi + (kPi - 2.0) * a2));
}

std::vector<double> draw_errors(const ErrorFamily& family, std::size_t n, Engine& rng) {
  std::vector<double> out(n);
  std::normal_distribution<double> normal;
  switch (family.kind) {
    case ErrorFamily::Kind::kGaussianStd:
      for (auto& e : out) e = normal(rng);
      break;
    case ErrorFamily::Kind::kSkewNormal: {
      if (!(family.parameter >= 0.0)) throw ArgumentError("skew-normal delta must be >= 0");
      const double a = 5.0 * family.parameter;
      const double d = a / std::sqrt(1.0 + a * a);
      const double c = std::sqrt(1.0 - d * d);
      const double loc = skew_normal_location(family.parameter);
      const double scale = skew_normal_scale(family.parameter);
      for (auto& e : out) {
        const double z1 = normal(rng);
        const double z2 = normal(rng);
        e = loc + scale * (d * std::abs(z1) + c * z2);
      }
      break;
    }
    case ErrorFamily::Kind::kStudentT: {
      if (!(family.parameter >= 1.0)) throw ArgumentError("Student-t degrees of freedom must be >= 1");
      std::student_t_distribution<double> t(family.parameter);
      for (auto& e : out) e = t(rng);
      break;
    }
  }
  return out;
}

FunctionalSample generate(const DgpConfig& config) {
  config.validate();
  static const GridFunction beta_300 = gamma_coefficient(3.0, 1.0 / 3.0, 300);
  const GridFunction beta =
      config.p == 300 ? beta_300 : gamma_coefficient(3.0, 1.0 / 3.0, config.p);

  Engine cov_rng = make_stream(config.seed, StreamPurpose::kCovariate, {config.stream});
  Engine err_rng = make_stream(config.seed, StreamPurpose::kError, {config.stream});

  FunctionalSample sample;
  sample.xs.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    sample.xs.push_back(draw_covariate(config.variant, config.p, cov_rng));
  }
  std::vector<double> eps = config.zero_errors ? std::vector<double>(config.n, 0.0)
                                               : draw_errors(config.errors, config.n, err_rng);
  sample.ys.resize(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    sample.ys[i] = inner_product(sample.xs[i], beta) + eps[i];
  }
  sample.true_errors = std::move(eps);
  return sample;
}

}  // namespace fgof
