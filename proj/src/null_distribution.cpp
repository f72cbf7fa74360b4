#include "fgof/null_distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/distributions/laplace.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fgof/error.hpp"

namespace fgof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12, &err);
}

}  // namespace

double numeric_mean_partial(const std::function<double(double)>& pdf, double z) {
  if (z == kInf) return integrate([&](double x) { return x * pdf(x); }, -kInf, kInf);
  return integrate([&](double x) { return x * pdf(x); }, -kInf, z);
}

NullDistribution NullDistribution::standard_normal() {
  auto d = normal(1.0);
  d.is_standard_normal = true;
  return d;
}

NullDistribution NullDistribution::normal(double sigma) {
  if (!(sigma > 0.0)) throw ArgumentError("normal null needs sigma > 0");
  const boost::math::normal_distribution<double> dist(0.0, sigma);
  NullDistribution d;
  d.name = "normal(sigma=" + format_param(sigma) + ")";
  d.cdf = [dist](double z) {
    if (z == kInf) return 1.0;
    if (z == -kInf) return 0.0;
    return boost::math::cdf(dist, z);
  };
  d.pdf = [dist](double z) { return std::isfinite(z) ? boost::math::pdf(dist, z) : 0.0; };
  d.quantile = [dist](double u) { return boost::math::quantile(dist, u); };
  d.mean_partial = [sigma](double z) {
    if (!std::isfinite(z)) return 0.0;
    const double u = z / sigma;
    return -sigma * std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
  };
  d.variance = sigma * sigma;
  d.char_real = [sigma](double t) { return std::exp(-0.5 * sigma * sigma * t * t); };
  d.char_imag = [](double) { return 0.0; };
  d.is_standard_normal = (sigma == 1.0);
  return d;
}

NullDistribution NullDistribution::student_t(double df, double scale) {
  if (!(df > 2.0)) throw ArgumentError("Student-t null needs df > 2 for a finite variance");
  if (!(scale > 0.0)) throw ArgumentError("Student-t null needs scale > 0");
  const boost::math::students_t_distribution<double> dist(df);
  NullDistribution d;
  d.name = "t(df=" + format_param(df) + ",scale=" + format_param(scale) + ")";
  d.cdf = [dist, scale](double z) {
    if (z == kInf) return 1.0;
    if (z == -kInf) return 0.0;
    return boost::math::cdf(dist, z / scale);
  };
  d.pdf = [dist, scale](double z) {
    return std::isfinite(z) ? boost::math::pdf(dist, z / scale) / scale : 0.0;
  };
  d.quantile = [dist, scale](double u) { return scale * boost::math::quantile(dist, u); };
  auto pdf = d.pdf;
  d.mean_partial = [pdf](double z) {
    if (!std::isfinite(z)) return 0.0;
    return numeric_mean_partial(pdf, z);
  };
  d.variance = scale * scale * df / (df - 2.0);
  return d;
}

NullDistribution NullDistribution::laplace(double b) {
  if (!(b > 0.0)) throw ArgumentError("Laplace null needs b > 0");
  const boost::math::laplace_distribution<double> dist(0.0, b);
  NullDistribution d;
  d.name = "laplace(b=" + format_param(b) + ")";
  d.cdf = [dist](double z) {
    if (z == kInf) return 1.0;
    if (z == -kInf) return 0.0;
    return boost::math::cdf(dist, z);
  };
  d.pdf = [dist](double z) { return std::isfinite(z) ? boost::math::pdf(dist, z) : 0.0; };
  d.quantile = [dist](double u) { return boost::math::quantile(dist, u); };
  auto pdf = d.pdf;
  d.mean_partial = [pdf](double z) {
    if (!std::isfinite(z)) return 0.0;
    return numeric_mean_partial(pdf, z);
  };
  d.variance = 2.0 * b * b;
  d.char_real = [b](double t) { return 1.0 / (1.0 + b * b * t * t); };
  d.char_imag = [](double) { return 0.0; };
  return d;
}

NullDistribution NullDistribution::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ArgumentError("empty null distribution specification");
  auto num = [&](std::size_t i) {
    try {
      std::size_t used = 0;
      const double v = std::stod(parts.at(i), &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
      return v;
    } catch (const std::exception&) {
      throw ArgumentError("bad parameter in null distribution '" + text + "'");
    }
  };
  const auto& kind = parts[0];
  if (kind == "normal") {
    if (parts.size() == 1) return standard_normal();
    const double sigma = num(1);
    return sigma == 1.0 ? standard_normal() : normal(sigma);
  }
  if (kind == "t" && parts.size() >= 2) {
    return student_t(num(1), parts.size() >= 3 ? num(2) : 1.0);
  }
  if (kind == "laplace" && parts.size() == 2) return laplace(num(1));
  throw ArgumentError("unknown null distribution '" + text +
                      "' (expected normal[:sigma], t:df[:scale] or laplace:b)");
}

double null_char_real(const NullDistribution& null, double t) {
  if (null.char_real) return null.char_real(t);
  if (t == 0.0) return 1.0;
  return integrate([&](double x) { return std::cos(t * x) * null.pdf(x); }, -kInf, kInf);
}

double null_char_imag(const NullDistribution& null, double t) {
  if (null.char_imag) return null.char_imag(t);
  if (t == 0.0) return 0.0;
  return integrate([&](double x) { return std::sin(t * x) * null.pdf(x); }, -kInf, kInf);
}

}  // namespace fgof
