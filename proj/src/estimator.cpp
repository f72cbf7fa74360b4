#include "fgof/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "fgof/error.hpp"

namespace fgof {

const char* to_string(Regime regime) noexcept {
  return regime == Regime::kWithIntercept ? "with_intercept" : "no_intercept";
}

void FunctionalSample::validate() const {
  if (ys.size() < 2) throw ArgumentError("a functional sample needs n >= 2 observations");
  if (xs.size() != ys.size()) {
    throw DimensionError("covariate count " + std::to_string(xs.size()) +
                         " does not match response count " + std::to_string(ys.size()));
  }
  const std::size_t grid = xs.front().size();
  for (const auto& x : xs) {
    if (x.size() != grid) throw DimensionError("covariates use different grid sizes");
  }
  for (double y : ys) {
    if (!std::isfinite(y)) throw ArgumentError("non-finite response value");
  }
  if (true_errors && true_errors->size() != ys.size()) {
    throw DimensionError("true_errors length does not match n");
  }
}

Eigen::MatrixXd penalty_matrix(std::size_t p, int m) {
  if (m < 1) throw ArgumentError("derivative order m must be >= 1");
  if (p <= static_cast<std::size_t>(m)) {
    throw ArgumentError("grid size p = " + std::to_string(p) + " must exceed m = " +
                        std::to_string(m));
  }
  // Coefficients of the m-th forward difference: (-1)^(m-j) C(m, j).
  std::vector<double> stencil(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    double c = 1.0;
    for (int i = 0; i < j; ++i) c = c * (m - i) / (i + 1);
    stencil[static_cast<std::size_t>(j)] = ((m - j) % 2 == 0) ? c : -c;
  }
  const double h = 1.0 / static_cast<double>(p - 1);
  const double scale = std::pow(h, -m);
  const auto rows = static_cast<Eigen::Index>(p) - m;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(p));
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (int j = 0; j <= m; ++j) d(r, r + j) = stencil[static_cast<std::size_t>(j)] * scale;
  }
  Eigen::MatrixXd pen = h * (d.transpose() * d);
  return 0.5 * (pen + pen.transpose());
}

std::vector<double> default_lambda_grid() {
  constexpr int kCount = 50;
  std::vector<double> grid(kCount);
  for (int i = 0; i < kCount; ++i) {
    grid[static_cast<std::size_t>(i)] = std::pow(10.0, -10.0 + 12.0 * i / (kCount - 1));
  }
  return grid;
}

namespace {

// Eigen-decomposition of the penalty, split into its m-dimensional null space
// (polynomials of degree < m) and the penalized complement.
struct PenaltySpectrum {
  Eigen::MatrixXd null_basis;     // p x m
  Eigen::MatrixXd range_scaled;   // p x (p-m): eigenvectors scaled by 1/sqrt(eigenvalue)
};

std::shared_ptr<const PenaltySpectrum> penalty_spectrum(std::size_t p, int m) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const PenaltySpectrum>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, m});
    if (it != cache.end()) return it->second;
  }
  const Eigen::MatrixXd pen = penalty_matrix(p, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pen);
  if (eig.info() != Eigen::Success) throw NumericalError("penalty eigendecomposition failed");
  const auto pi = static_cast<Eigen::Index>(p);
  auto spectrum = std::make_shared<PenaltySpectrum>();
  // Eigenvalues come sorted ascending; the first m span the null space.
  spectrum->null_basis = eig.eigenvectors().leftCols(m);
  const Eigen::VectorXd values = eig.eigenvalues().tail(pi - m);
  if (values.minCoeff() <= 0.0) throw NumericalError("penalty has more than m null directions");
  spectrum->range_scaled =
      eig.eigenvectors().rightCols(pi - m) * values.cwiseSqrt().cwiseInverse().asDiagonal();
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(std::make_pair(p, m), std::move(spectrum)).first->second;
}

// Spectral form of the penalized problem. After reparametrizing
// b = N c0 + R c1 (N: penalty null space, R: scaled range), the fit is a
// ridge regression in c1 with unpenalized columns Z0 = G N. Projecting out
// Z0 (and the intercept) and diagonalizing the projected Gram matrix makes
// the smoother matrix, its trace and the residual norm cheap for any lambda.
class SpectralSolver {
 public:
  SpectralSolver(const FunctionalSample& sample, int m, Regime regime)
      : sample_(sample), regime_(regime) {
    sample.validate();
    const std::size_t p = sample.p();
    if (p <= static_cast<std::size_t>(m)) {
      throw ArgumentError("grid size p = " + std::to_string(p) + " must exceed m = " +
                          std::to_string(m));
    }
    n_ = static_cast<Eigen::Index>(sample.n());
    spectrum_ = penalty_spectrum(p, m);

    const Eigen::VectorXd w = trapezoid_weights(p);
    Eigen::MatrixXd g(n_, static_cast<Eigen::Index>(p));
    for (Eigen::Index i = 0; i < n_; ++i) {
      g.row(i) = sample.xs[static_cast<std::size_t>(i)].as_vector().cwiseProduct(w).transpose();
    }
    y_ = Eigen::Map<const Eigen::VectorXd>(sample.ys.data(), n_);
    if (regime == Regime::kWithIntercept) {
      g.rowwise() -= g.colwise().mean();
      y_.array() -= y_.mean();
    }

    const Eigen::MatrixXd z0 = g * spectrum_->null_basis;
    Eigen::MatrixXd z1 = g * spectrum_->range_scaled;

    qr_.setThreshold(1e-10);
    qr_.compute(z0);
    const auto rank = z0.cwiseAbs().maxCoeff() == 0.0 ? Eigen::Index{0} : qr_.rank();
    if (rank < m) {
      throw NumericalError(
          "penalized system is singular: the design does not identify the unpenalized "
          "polynomial part of beta (rank " +
          std::to_string(rank) + " < m = " + std::to_string(m) +
          "); check for degenerate covariates");
    }
    const Eigen::MatrixXd q =
        qr_.householderQ() * Eigen::MatrixXd::Identity(n_, m);
    z1_raw_ = z1;
    z1 -= q * (q.transpose() * z1);
    y_proj_ = y_ - q * (q.transpose() * y_);
    z1_proj_ = std::move(z1);

    const Eigen::Index cols = z1_proj_.cols();
    if (n_ <= cols) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(z1_proj_ * z1_proj_.transpose());
      if (eig.info() != Eigen::Success) throw NumericalError("Gram eigendecomposition failed");
      keep(eig.eigenvalues(), eig.eigenvectors(), false);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(z1_proj_.transpose() * z1_proj_);
      if (eig.info() != Eigen::Success) throw NumericalError("Gram eigendecomposition failed");
      keep(eig.eigenvalues(), eig.eigenvectors(), true);
    }
    coords_ = basis_.transpose() * y_proj_;
    unpenalized_df_ = static_cast<double>(m) + (regime == Regime::kWithIntercept ? 1.0 : 0.0);
  }

  double trace(double lambda) const {
    const double nl = static_cast<double>(n_) * lambda;
    return unpenalized_df_ + (eigvals_.array() / (eigvals_.array() + nl)).sum();
  }

  double residual_sum_of_squares(double lambda) const {
    const double nl = static_cast<double>(n_) * lambda;
    const double total = y_proj_.squaredNorm();
    const double captured = coords_.squaredNorm();
    const Eigen::ArrayXd shrink = nl / (eigvals_.array() + nl);
    return std::max(0.0, total - captured + (coords_.array().square() * shrink.square()).sum());
  }

  double gcv(double lambda) const {
    const double n = static_cast<double>(n_);
    const double denom = 1.0 - trace(lambda) / n;
    if (!(denom > 1e-12)) return std::numeric_limits<double>::infinity();
    return (residual_sum_of_squares(lambda) / n) / (denom * denom);
  }

  FitResult solve(double lambda) const {
    const double nl = static_cast<double>(n_) * lambda;
    const Eigen::VectorXd scaled =
        (coords_.array() / (eigvals_.array() + nl)).matrix();
    const Eigen::VectorXd c1 = z1_proj_.transpose() * (basis_ * scaled);
    // Unpenalized coordinates from the least-squares fit of what remains.
    const Eigen::VectorXd remainder = y_ - z1_raw_ * c1;
    const Eigen::VectorXd c0 = qr_.solve(remainder);

    const Eigen::VectorXd b = spectrum_->null_basis * c0 + spectrum_->range_scaled * c1;
    GridFunction beta(std::vector<double>(b.data(), b.data() + b.size()));

    FitResult out;
    out.regime = regime_;
    out.lambda = lambda;
    if (regime_ == Regime::kWithIntercept) {
      const GridFunction xbar = mean_function(sample_.xs);
      double ybar = 0.0;
      for (double y : sample_.ys) ybar += y;
      ybar /= static_cast<double>(n_);
      out.alpha_hat = ybar - inner_product(xbar, beta);
    }
    out.residuals.resize(sample_.n());
    double ss = 0.0;
    for (std::size_t i = 0; i < sample_.n(); ++i) {
      const double r = sample_.ys[i] - out.alpha_hat - inner_product(sample_.xs[i], beta);
      out.residuals[i] = r;
      ss += r * r;
    }
    out.theta_hat = std::sqrt(ss / static_cast<double>(n_));
    out.beta_hat = std::move(beta);
    out.effective_df = trace(lambda);
    out.gcv = gcv(lambda);
    return out;
  }

 private:
  void keep(const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors, bool right_side) {
    const double top = values.size() > 0 ? values.maxCoeff() : 0.0;
    const double floor = std::max(top * 1e-14, std::numeric_limits<double>::min());
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      if (values[j] > floor) idx.push_back(j);
    }
    const auto r = static_cast<Eigen::Index>(idx.size());
    eigvals_.resize(r);
    basis_.resize(n_, r);
    for (Eigen::Index k = 0; k < r; ++k) {
      const Eigen::Index j = idx[static_cast<std::size_t>(k)];
      eigvals_[k] = values[j];
      if (right_side) {
        basis_.col(k) = z1_proj_ * vectors.col(j) / std::sqrt(values[j]);
      } else {
        basis_.col(k) = vectors.col(j);
      }
    }
  }

  const FunctionalSample& sample_;
  Regime regime_;
  Eigen::Index n_ = 0;
  std::shared_ptr<const PenaltySpectrum> spectrum_;
  Eigen::VectorXd y_;
  Eigen::VectorXd y_proj_;
  Eigen::MatrixXd z1_raw_;
  Eigen::MatrixXd z1_proj_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  Eigen::VectorXd eigvals_;
  Eigen::MatrixXd basis_;
  Eigen::VectorXd coords_;
  double unpenalized_df_ = 0.0;
};

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("lambda must be a positive finite real");
  }
}

}  // namespace

FitResult fit(const FunctionalSample& sample, int m, double lambda, Regime regime) {
  check_lambda(lambda);
  SpectralSolver solver(sample, m, regime);
  return solver.solve(lambda);
}

std::vector<double> gcv_curve(const FunctionalSample& sample, int m,
                              std::span<const double> lambda_grid, Regime regime) {
  if (lambda_grid.empty()) throw ArgumentError("lambda grid is empty");
  for (double l : lambda_grid) check_lambda(l);
  SpectralSolver solver(sample, m, regime);
  std::vector<double> out;
  out.reserve(lambda_grid.size());
  for (double l : lambda_grid) out.push_back(solver.gcv(l));
  return out;
}

FitResult fit_gcv(const FunctionalSample& sample, int m, std::span<const double> lambda_grid,
                  Regime regime) {
  if (lambda_grid.empty()) throw ArgumentError("lambda grid is empty");
  for (double l : lambda_grid) check_lambda(l);
  SpectralSolver solver(sample, m, regime);
  double best_score = std::numeric_limits<double>::infinity();
  double best_lambda = 0.0;
  for (double l : lambda_grid) {
    const double score = solver.gcv(l);
    if (!std::isfinite(score)) continue;
    if (score < best_score || (score == best_score && l > best_lambda)) {
      best_score = score;
      best_lambda = l;
    }
  }
  if (!(best_lambda > 0.0)) {
    throw NumericalError("degenerate smoother: tr(A(lambda)) >= n for every lambda in the grid");
  }
  return solver.solve(best_lambda);
}

double penalized_objective(const FunctionalSample& sample, double a, const GridFunction& b,
                           int m, double lambda) {
  double ss = 0.0;
  for (std::size_t i = 0; i < sample.n(); ++i) {
    const double r = sample.ys[i] - a - inner_product(sample.xs[i], b);
    ss += r * r;
  }
  const Eigen::MatrixXd pen = penalty_matrix(b.size(), m);
  const auto bv = b.as_vector();
  return ss / static_cast<double>(sample.n()) + lambda * bv.dot(pen * bv);
}

double residual_gap_diagnostic(const FitResult& fit, const FunctionalSample& sample) {
  if (!sample.true_errors) {
    throw UnsupportedDiagnosticError("residual gap diagnostic needs the true errors");
  }
  const auto& eps = *sample.true_errors;
  if (eps.size() != fit.residuals.size()) {
    throw DimensionError("residual and true error vectors differ in length");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < eps.size(); ++j) {
    const double d = fit.residuals[j] - eps[j];
    acc += d * d;
  }
  return acc / std::sqrt(static_cast<double>(eps.size()));
}

}  // namespace fgof
