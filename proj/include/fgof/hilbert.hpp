#pragma once

// Discrete stand-in for L2([0,1]): real functions sampled on the closed
// equidistant grid t_k = k / (p - 1), k = 0..p-1, integrated by the composite
// trapezoid rule.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fgof {

class GridFunction {
 public:
  /// Throws ArgumentError if fewer than two values or any value is not finite.
  explicit GridFunction(std::vector<double> values);

  /// Samples `f` on a grid with `p` points.
  static GridFunction sample(std::size_t p, const std::function<double(double)>& f);
  static GridFunction constant(std::size_t p, double value);

  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept { return 1.0 / static_cast<double>(values_.size() - 1); }
  double at(std::size_t k) const { return values_.at(k); }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }
  Eigen::Map<const Eigen::VectorXd> as_vector() const noexcept {
    return {values_.data(), static_cast<Eigen::Index>(values_.size())};
  }

  /// Location of grid point k in [0,1].
  double point(std::size_t k) const noexcept {
    return static_cast<double>(k) * spacing();
  }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double scale);

 private:
  std::vector<double> values_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(double scale, GridFunction f);

/// Trapezoid weights h/2, h, ..., h, h/2 for a closed grid with p points.
Eigen::VectorXd trapezoid_weights(std::size_t p);

/// Trapezoid approximation of the integral of f*g over [0,1].
double inner_product(const GridFunction& f, const GridFunction& g);

double norm(const GridFunction& f);

/// Pointwise arithmetic mean; throws ArgumentError for an empty list.
GridFunction mean_function(std::span<const GridFunction> xs);

}  // namespace fgof
