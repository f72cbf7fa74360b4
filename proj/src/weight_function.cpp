#include "fgof/weight_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fgof/error.hpp"

namespace fgof {

WeightFunction WeightFunction::gaussian() {
  WeightFunction w;
  w.kind = Kind::kGaussian;
  w.name = "gaussian";
  w.value = [](double t) { return std::exp(-0.5 * t * t); };
  w.fourth_moment = 3.0 * std::sqrt(2.0 * std::numbers::pi);
  // int_{|t|>T} e^{-t^2/2} dt = sqrt(2 pi) erfc(T / sqrt 2)
  w.tail_mass = [](double t) {
    return std::sqrt(2.0 * std::numbers::pi) * std::erfc(std::abs(t) / std::numbers::sqrt2);
  };
  return w;
}

WeightFunction WeightFunction::custom(std::string name, std::function<double(double)> fn,
                                      double fourth_moment,
                                      std::function<double(double)> tail_mass) {
  if (!fn) throw ArgumentError("weight function is empty");
  for (int k = 0; k <= 400; ++k) {
    const double t = 0.05 * k;
    const double a = fn(t);
    const double b = fn(-t);
    if (!std::isfinite(a) || a < 0.0) {
      throw ArgumentError("weight function must be finite and non-negative (t = " +
                          std::to_string(t) + ")");
    }
    if (std::abs(a - b) > 1e-10 * (1.0 + std::abs(a))) {
      throw ArgumentError("weight function must be symmetric (t = " + std::to_string(t) + ")");
    }
  }
  if (fourth_moment <= 0.0) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    try {
      const double half = gauss_kronrod<double, 61>::integrate(
          [&](double t) { return t * t * t * t * fn(t); }, 0.0,
          std::numeric_limits<double>::infinity(), 15, 1e-10, &err);
      fourth_moment = 2.0 * half;
    } catch (const std::exception&) {
      fourth_moment = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(fourth_moment) || !(err <= 1e-6 * std::max(1.0, fourth_moment))) {
      throw ArgumentError("weight function has an infinite fourth moment");
    }
  }
  WeightFunction w;
  w.kind = Kind::kCustom;
  w.name = std::move(name);
  w.value = std::move(fn);
  w.fourth_moment = fourth_moment;
  if (tail_mass) {
    w.tail_mass = std::move(tail_mass);
  } else {
    const double m4 = fourth_moment;
    w.tail_mass = [m4](double t) {
      const double a = std::abs(t);
      return a > 0.0 ? m4 / (a * a * a * a) : std::numeric_limits<double>::infinity();
    };
  }
  return w;
}

}  // namespace fgof
