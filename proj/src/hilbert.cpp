#include "fgof/hilbert.hpp"

#include <cmath>
#include <string>

#include "fgof/error.hpp"

namespace fgof {

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size()) {
    throw DimensionError("grid size mismatch: " + std::to_string(f.size()) +
                         " vs " + std::to_string(g.size()));
  }
}

}  // namespace

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw ArgumentError("a grid function needs at least two grid points");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw ArgumentError("non-finite grid function value at index " + std::to_string(k));
    }
  }
}

GridFunction GridFunction::sample(std::size_t p, const std::function<double(double)>& f) {
  if (p < 2) throw ArgumentError("a grid function needs at least two grid points");
  std::vector<double> v(p);
  const double h = 1.0 / static_cast<double>(p - 1);
  for (std::size_t k = 0; k < p; ++k) v[k] = f(static_cast<double>(k) * h);
  return GridFunction(std::move(v));
}

GridFunction GridFunction::constant(std::size_t p, double value) {
  return GridFunction(std::vector<double>(p, value));
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

GridFunction& GridFunction::operator*=(double scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(double scale, GridFunction f) { return f *= scale; }

Eigen::VectorXd trapezoid_weights(std::size_t p) {
  if (p < 2) throw ArgumentError("trapezoid rule needs at least two grid points");
  const double h = 1.0 / static_cast<double>(p - 1);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), h);
  w[0] = 0.5 * h;
  w[static_cast<Eigen::Index>(p) - 1] = 0.5 * h;
  return w;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  const std::size_t p = f.size();
  double interior = 0.0;
  for (std::size_t k = 1; k + 1 < p; ++k) interior += f[k] * g[k];
  const double ends = 0.5 * (f[0] * g[0] + f[p - 1] * g[p - 1]);
  return (interior + ends) * f.spacing();
}

double norm(const GridFunction& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

GridFunction mean_function(std::span<const GridFunction> xs) {
  if (xs.empty()) throw ArgumentError("mean of an empty list of grid functions");
  const std::size_t p = xs.front().size();
  std::vector<double> acc(p, 0.0);
  for (const auto& x : xs) {
    if (x.size() != p) {
      throw DimensionError("grid size mismatch in mean_function: " + std::to_string(p) +
                           " vs " + std::to_string(x.size()));
    }
    for (std::size_t k = 0; k < p; ++k) acc[k] += x[k];
  }
  const double inv = 1.0 / static_cast<double>(xs.size());
  for (auto& v : acc) v *= inv;
  return GridFunction(std::move(acc));
}

}  // namespace fgof
