#include "fgof/limit_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "fgof/error.hpp"
#include "fgof/parallel.hpp"
#include "fgof/rng.hpp"

namespace fgof {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double std_normal_pdf(double y) { return kInvSqrt2Pi * std::exp(-0.5 * y * y); }

double std_normal_quantile(double u) {
  static const boost::math::normal_distribution<double> dist;
  return boost::math::quantile(dist, u);
}

[[maybe_unused]] double std_normal_cdf(double y) {
  static const boost::math::normal_distribution<double> dist;
  return boost::math::cdf(dist, y);
}

// phi(Phi^{-1}(u)) and Phi^{-1}(u) * phi(Phi^{-1}(u)), both vanishing at the ends.
struct NormalScore {
  double density = 0.0;
  double quantile_density = 0.0;
};

NormalScore normal_score(double u) {
  if (u <= 0.0 || u >= 1.0) return {};
  const double y = std_normal_quantile(u);
  const double f = std_normal_pdf(y);
  return {f, y * f};
}

// Expectations under a general null, by composite Gauss-Legendre quadrature
// on the probability scale: E[g(eps0)] = int_0^1 g(F0^{-1}(u)) du.
struct QuantileRule {
  std::vector<double> eps;
  std::vector<double> weight;
};

// Panels are uniform in u and additionally broken at F0(x) on an x-spacing
// of at most 0.25 (finer for |s| > 6), which keeps the tails of F0^{-1} resolved
// and cos(s x) from turning by more than 1.5 rad per panel.
QuantileRule quantile_rule(const NullDistribution& null, double smax) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  constexpr int kUniformPanels = 200;
  constexpr int kMaxSpatialPanels = 400;
  std::vector<double> breaks;
  for (int k = 0; k <= kUniformPanels; ++k) breaks.push_back(static_cast<double>(k) / kUniformPanels);
  const double reach = std::min(std::abs(null.quantile(1e-12)), std::abs(null.quantile(1.0 - 1e-12)));
  if (std::isfinite(reach) && reach > 0.0) {
    const double step = std::max(1.5 / std::max(smax, 6.0), 2.0 * reach / kMaxSpatialPanels);
    for (double x = -reach; x <= reach; x += step) {
      const double u = null.cdf(x);
      if (u > 0.0 && u < 1.0) breaks.push_back(u);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  QuantileRule rule;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  for (std::size_t panel = 0; panel + 1 < breaks.size(); ++panel) {
    const double half = 0.5 * (breaks[panel + 1] - breaks[panel]);
    if (!(half > 0.0)) continue;
    const double mid = breaks[panel] + half;
    for (std::size_t k = 0; k < abscissa.size(); ++k) {
      for (int sign : {-1, 1}) {
        if (k == 0 && sign == 1 && abscissa[0] == 0.0) continue;
        const double u = mid + sign * half * abscissa[k];
        if (!(u > 0.0 && u < 1.0)) continue;
        rule.eps.push_back(null.quantile(u));
        rule.weight.push_back(half * weights[k]);
      }
    }
  }
  return rule;
}

double max_abs(std::span<const double> grid) {
  double m = 0.0;
  for (double x : grid) m = std::max(m, std::abs(x));
  return m;
}

// Values of Z(s) at every quadrature node for the simple ECF kernels.
Eigen::MatrixXd ecf_node_values(KernelId id, const QuantileRule& rule,
                                std::span<const double> grid) {
  const auto nodes = static_cast<Eigen::Index>(rule.eps.size());
  const auto pts = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd z(nodes, pts);
  for (Eigen::Index c = 0; c < pts; ++c) {
    const double s = grid[static_cast<std::size_t>(c)];
    double phi1 = 0.0;
    double phi2 = 0.0;
    for (Eigen::Index r = 0; r < nodes; ++r) {
      const double e = rule.eps[static_cast<std::size_t>(r)];
      const double w = rule.weight[static_cast<std::size_t>(r)];
      phi1 += w * std::cos(s * e);
      phi2 += w * std::sin(s * e);
    }
    for (Eigen::Index r = 0; r < nodes; ++r) {
      const double e = rule.eps[static_cast<std::size_t>(r)];
      double v = std::sin(s * e) + std::cos(s * e);
      if (id == KernelId::kC11) v += (phi2 - phi1) * s * e;
      z(r, c) = v;
    }
  }
  return z;
}

Eigen::MatrixXd node_covariance(const Eigen::MatrixXd& z, const QuantileRule& rule) {
  const Eigen::Map<const Eigen::VectorXd> w(rule.weight.data(),
                                            static_cast<Eigen::Index>(rule.weight.size()));
  const Eigen::VectorXd mean = z.transpose() * w;
  Eigen::MatrixXd cov = z.transpose() * w.asDiagonal() * z;
  cov.noalias() -= mean * mean.transpose();
  return 0.5 * (cov + cov.transpose());
}

bool uses_generic_ecf(const KernelSpec& spec) {
  return (spec.id == KernelId::kC11 || spec.id == KernelId::kC12) && spec.null_dist &&
         !spec.null_dist->is_standard_normal;
}

double ecf_closed_form(KernelId id, double s, double t) {
  const double e = std::exp(-0.5 * (s - t) * (s - t));
  const double f = std::exp(-0.5 * (s * s + t * t));
  switch (id) {
    case KernelId::kC11:
      return e - (s * t + 1.0) * f;
    case KernelId::kC12:
      return e - f;
    case KernelId::kC21:
      return e - (0.5 * (s * t) * (s * t) + s * t + 1.0) * f;
    case KernelId::kC22:
      return e - (0.5 * (s * t) * (s * t) + 1.0) * f;
    default:
      break;
  }
  throw ArgumentError("not an ECF kernel");
}

double cdf_kernel(const KernelSpec& spec, double s, double t) {
  const double bridge = std::min(s, t) - s * t;
  switch (spec.id) {
    case KernelId::kD1: {
      const auto a = normal_score(s);
      const auto b = normal_score(t);
      return bridge - a.density * b.density - 0.5 * a.quantile_density * b.quantile_density;
    }
    case KernelId::kD2: {
      const auto a = normal_score(s);
      const auto b = normal_score(t);
      return bridge - 0.5 * a.quantile_density * b.quantile_density;
    }
    case KernelId::kSimpleCdfAb2:
      return bridge;
    case KernelId::kSimpleCdfAb1: {
      if (s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0) return bridge;
      const auto& null = *spec.null_dist;
      const double y = null.quantile(s);
      const double z = null.quantile(t);
      const double fy = null.pdf(y);
      const double fz = null.pdf(z);
      return bridge + fy * null.mean_partial(z) + fz * null.mean_partial(y) +
             null.variance * (fy * fz);
    }
    default:
      break;
  }
  throw ArgumentError("not a CDF kernel");
}

std::vector<double> linspace(double a, double b, std::size_t points) {
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    out[k] = (k + 1 == points) ? b : a + (b - a) * static_cast<double>(k) /
                                          static_cast<double>(points - 1);
  }
  return out;
}

}  // namespace

const char* to_string(KernelId id) noexcept {
  switch (id) {
    case KernelId::kD1: return "D1";
    case KernelId::kD2: return "D2";
    case KernelId::kC11: return "C11";
    case KernelId::kC12: return "C12";
    case KernelId::kC21: return "C21";
    case KernelId::kC22: return "C22";
    case KernelId::kSimpleCdfAb1: return "SIMPLE_CDF_AB1";
    case KernelId::kSimpleCdfAb2: return "SIMPLE_CDF_AB2";
  }
  return "?";
}

KernelId kernel_from_string(const std::string& name) {
  for (auto id : {KernelId::kD1, KernelId::kD2, KernelId::kC11, KernelId::kC12, KernelId::kC21,
                  KernelId::kC22, KernelId::kSimpleCdfAb1, KernelId::kSimpleCdfAb2}) {
    if (name == to_string(id)) return id;
  }
  throw ArgumentError("unknown kernel '" + name + "'");
}

bool is_cdf_kernel(KernelId id) noexcept {
  return id == KernelId::kD1 || id == KernelId::kD2 || id == KernelId::kSimpleCdfAb1 ||
         id == KernelId::kSimpleCdfAb2;
}

KernelSpec KernelSpec::cdf(KernelId id, std::size_t points, std::optional<NullDistribution> null) {
  if (!is_cdf_kernel(id)) throw ArgumentError(std::string(to_string(id)) + " is not a CDF kernel");
  if (points < 2) throw ArgumentError("kernel grid needs at least two points");
  KernelSpec spec{id, std::move(null), linspace(0.0, 1.0, points)};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::ecf(KernelId id, std::size_t points, double half_width,
                           std::optional<NullDistribution> null) {
  if (is_cdf_kernel(id)) throw ArgumentError(std::string(to_string(id)) + " is not an ECF kernel");
  if (points < 2) throw ArgumentError("kernel grid needs at least two points");
  if (!(half_width > 0.0)) throw ArgumentError("ECF grid half width must be positive");
  std::vector<double> grid = linspace(-half_width, half_width, points);
  // Exact mirror symmetry.
  for (std::size_t k = 0; k < points / 2; ++k) grid[points - 1 - k] = -grid[k];
  if (points % 2 == 1) grid[points / 2] = 0.0;
  KernelSpec spec{id, std::move(null), std::move(grid)};
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  if (grid.size() < 2) throw ArgumentError("kernel grid needs at least two points");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw ArgumentError("kernel grid must be strictly increasing");
  }
  if (is_cdf_kernel(id)) {
    if (grid.front() < 0.0 || grid.back() > 1.0) {
      throw ArgumentError("CDF kernel grid must lie in [0,1]");
    }
    if ((id == KernelId::kSimpleCdfAb1 || id == KernelId::kSimpleCdfAb2) && !null_dist) {
      throw ConfigurationError(std::string(to_string(id)) + " needs a null distribution");
    }
  } else {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (std::abs(grid[k] + grid[grid.size() - 1 - k]) > 1e-12 * (1.0 + std::abs(grid[k]))) {
        throw ArgumentError("ECF kernel grid must be symmetric about 0");
      }
    }
  }
}

std::string KernelSpec::null_fingerprint() const {
  if (null_dist) return null_dist->name;
  return "standard_normal";
}

double kernel_eval(const KernelSpec& spec, double s, double t) {
  if (is_cdf_kernel(spec.id)) {
    if ((spec.id == KernelId::kSimpleCdfAb1 || spec.id == KernelId::kSimpleCdfAb2) &&
        !spec.null_dist) {
      throw ConfigurationError(std::string(to_string(spec.id)) + " needs a null distribution");
    }
    if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0) {
      throw ArgumentError("CDF kernel arguments must lie in [0,1]");
    }
    return cdf_kernel(spec, s, t);
  }
  if (uses_generic_ecf(spec)) {
    const std::vector<double> pts{std::min(s, t), std::max(s, t)};
    const QuantileRule rule = quantile_rule(*spec.null_dist, max_abs(pts));
    const Eigen::MatrixXd cov = node_covariance(ecf_node_values(spec.id, rule, pts), rule);
    return cov(0, 1);
  }
  return ecf_closed_form(spec.id, s, t);
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec) {
  spec.validate();
  const auto p = static_cast<Eigen::Index>(spec.grid.size());
  if (uses_generic_ecf(spec)) {
    const QuantileRule rule = quantile_rule(*spec.null_dist, max_abs(spec.grid));
    return node_covariance(ecf_node_values(spec.id, rule, spec.grid), rule);
  }
  Eigen::MatrixXd k(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel_eval(spec, spec.grid[static_cast<std::size_t>(i)],
                                   spec.grid[static_cast<std::size_t>(j)]);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

std::string Functional::fingerprint() const {
  switch (kind) {
    case Kind::kCvmIntegral: return "CVM_INTEGRAL";
    case Kind::kWeightedL2: return "W_WEIGHTED_L2(" + weight.name + ")";
    case Kind::kKsSup: return "KS_SUP";
  }
  return "?";
}

Eigen::VectorXd trapezoid_weights_on(std::span<const double> grid) {
  const auto p = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
  for (Eigen::Index k = 0; k + 1 < p; ++k) {
    const double h = grid[static_cast<std::size_t>(k) + 1] - grid[static_cast<std::size_t>(k)];
    w[k] += 0.5 * h;
    w[k + 1] += 0.5 * h;
  }
  return w;
}

GaussianProcessSampler::GaussianProcessSampler(const KernelSpec& spec) : spec_(spec) {
  const Eigen::MatrixXd gram = gram_matrix(spec_);
  const bool cdf = is_cdf_kernel(spec_.id);
  const double scale = std::max(1.0, gram.diagonal().maxCoeff());
  for (std::size_t k = 0; k < spec_.grid.size(); ++k) {
    const double u = spec_.grid[k];
    if (cdf && (u <= 0.0 || u >= 1.0)) continue;
    if (gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) <= 1e-14 * scale) continue;
    active_.push_back(k);
  }
  const auto a = static_cast<Eigen::Index>(active_.size());
  if (a == 0) return;  // identically zero process
  Eigen::MatrixXd sub(a, a);
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index j = 0; j < a; ++j) {
      sub(i, j) = gram(static_cast<Eigen::Index>(active_[static_cast<std::size_t>(i)]),
                       static_cast<Eigen::Index>(active_[static_cast<std::size_t>(j)]));
    }
  }
  for (double jitter = 1e-10; jitter <= 1.0000001e-6; jitter *= 10.0) {
    Eigen::MatrixXd shifted = sub;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      factor_ = llt.matrixL();
      jitter_ = jitter;
      return;
    }
  }
  throw NumericalError(std::string("Cholesky factorization failed for kernel ") +
                       to_string(spec_.id) + " even with diagonal jitter 1e-6");
}

std::vector<double> GaussianProcessSampler::sample_functional(const Functional& functional,
                                                              std::size_t reps,
                                                              std::uint64_t seed,
                                                              unsigned threads) const {
  if (reps < 1) throw ArgumentError("reps must be >= 1");
  std::vector<double> out(reps, 0.0);
  const auto a = static_cast<Eigen::Index>(active_.size());
  if (a == 0) return out;

  const Eigen::VectorXd full_w = trapezoid_weights_on(spec_.grid);
  Eigen::VectorXd w(a);
  for (Eigen::Index i = 0; i < a; ++i) {
    const std::size_t k = active_[static_cast<std::size_t>(i)];
    double wi = full_w[static_cast<Eigen::Index>(k)];
    if (functional.kind == Functional::Kind::kWeightedL2) wi *= functional.weight(spec_.grid[k]);
    w[i] = wi;
  }

  constexpr std::size_t kBatch = 256;
  const std::size_t batches = (reps + kBatch - 1) / kBatch;
  parallel_for(batches, threads, [&](std::size_t b) {
    const std::size_t first = b * kBatch;
    const std::size_t count = std::min(kBatch, reps - first);
    Eigen::MatrixXd z(a, static_cast<Eigen::Index>(count));
    for (std::size_t c = 0; c < count; ++c) {
      Engine engine = make_stream(seed, StreamPurpose::kProcess, {first + c});
      std::normal_distribution<double> normal;
      for (Eigen::Index i = 0; i < a; ++i) z(i, static_cast<Eigen::Index>(c)) = normal(engine);
    }
    const Eigen::MatrixXd g = factor_.triangularView<Eigen::Lower>() * z;
    for (std::size_t c = 0; c < count; ++c) {
      const auto col = g.col(static_cast<Eigen::Index>(c));
      double v = 0.0;
      if (functional.kind == Functional::Kind::kKsSup) {
        v = col.cwiseAbs().maxCoeff();
      } else {
        v = col.cwiseAbs2().dot(w);
      }
      out[first + c] = v;
    }
  });
  return out;
}

std::vector<double> simulate_functional(const KernelSpec& spec, const Functional& functional,
                                        std::size_t reps, std::uint64_t seed, unsigned threads) {
  return GaussianProcessSampler(spec).sample_functional(functional, reps, seed, threads);
}

std::pair<double, double> upper_quantile(std::span<const double> sorted, double alpha) {
  if (sorted.empty()) throw ArgumentError("quantile of an empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("level must lie in (0,1)");
  const auto reps = static_cast<double>(sorted.size());
  const auto last = static_cast<long long>(sorted.size());
  auto at = [&](long long one_based) {
    return sorted[static_cast<std::size_t>(std::clamp(one_based, 1LL, last) - 1)];
  };
  const double target = (1.0 - alpha) * reps;
  const auto index = static_cast<long long>(std::ceil(target - 1e-9 * std::max(1.0, target)));
  const double spread = std::sqrt(reps * alpha * (1.0 - alpha));
  const auto lo = static_cast<long long>(std::floor(static_cast<double>(index) - spread));
  const auto hi = static_cast<long long>(std::ceil(static_cast<double>(index) + spread));
  return {at(index), 0.5 * (at(hi) - at(lo))};
}

CritValTable tabulate(std::vector<double> samples, std::span<const double> levels) {
  std::sort(samples.begin(), samples.end());
  CritValTable table;
  table.reps = samples.size();
  for (double level : levels) {
    const auto [value, se] = upper_quantile(samples, level);
    table.values[level] = value;
    table.mc_stderr[level] = se;
  }
  return table;
}

CritValTable critical_values(const KernelSpec& spec, const Functional& functional,
                             std::span<const double> levels, std::size_t reps,
                             std::uint64_t seed, unsigned threads) {
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) throw ArgumentError("levels must lie in (0,1)");
  }
  CritValTable table = tabulate(simulate_functional(spec, functional, reps, seed, threads), levels);
  table.kernel = to_string(spec.id);
  table.null_fingerprint = spec.null_fingerprint();
  table.functional = functional.fingerprint();
  table.grid_size = spec.grid.size();
  table.seed = seed;
  return table;
}

const char* to_string(ExpansionKind kind) noexcept {
  switch (kind) {
    case ExpansionKind::kD1Sum: return "D1_SUM";
    case ExpansionKind::kD2Sum: return "D2_SUM";
    case ExpansionKind::kC21Sum: return "C21_SUM";
    case ExpansionKind::kC22Sum: return "C22_SUM";
  }
  return "?";
}

double asymptotic_expansion_functional(ExpansionKind kind, std::span<const double> eps,
                                       std::size_t cdf_grid, std::size_t ecf_grid,
                                       double ecf_half_width) {
  if (eps.empty()) throw ArgumentError("expansion needs n >= 1 errors");
  const auto n = static_cast<double>(eps.size());
  const double root_n = std::sqrt(n);
  double sum1 = 0.0;
  double sum2 = 0.0;
  for (double e : eps) {
    sum1 += e;
    sum2 += e * e - 1.0;
  }

  if (kind == ExpansionKind::kD1Sum || kind == ExpansionKind::kD2Sum) {
    const bool with_mean = kind == ExpansionKind::kD1Sum;
    std::vector<double> sorted(eps.begin(), eps.end());
    std::sort(sorted.begin(), sorted.end());
    const std::vector<double> grid = linspace(0.0, 1.0, cdf_grid);
    const Eigen::VectorXd w = trapezoid_weights_on(grid);
    std::size_t below = 0;
    double acc = 0.0;
    for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
      const double u = grid[k];
      const double y = std_normal_quantile(u);
      while (below < sorted.size() && sorted[below] <= y) ++below;
      const double f = std_normal_pdf(y);
      double g = static_cast<double>(below) - n * u + 0.5 * y * f * sum2;
      if (with_mean) g += f * sum1;
      g /= root_n;
      acc += w[static_cast<Eigen::Index>(k)] * g * g;
    }
    return acc;
  }

  // ECF sums on a symmetric grid; cos is even and sin odd in t, so only
  // t >= 0 is evaluated. Rotation recurrences are resynchronized periodically.
  const bool with_mean = kind == ExpansionKind::kC21Sum;
  const KernelSpec spec = KernelSpec::ecf(KernelId::kC21, ecf_grid, ecf_half_width);
  const auto& grid = spec.grid;
  const Eigen::VectorXd w = trapezoid_weights_on(grid);
  const std::size_t points = grid.size();
  const std::size_t first_nonneg = points / 2;  // index of 0 or the first positive point
  const std::size_t m = eps.size();
  std::vector<double> c(m), s(m), rc(m), rs(m);
  const double step = points > 1 ? grid[1] - grid[0] : 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    rc[j] = std::cos(step * eps[j]);
    rs[j] = std::sin(step * eps[j]);
  }
  double acc = 0.0;
  for (std::size_t k = first_nonneg; k < points; ++k) {
    const double t = grid[k];
    if (k == first_nonneg || (k - first_nonneg) % 32 == 0) {
      for (std::size_t j = 0; j < m; ++j) {
        c[j] = std::cos(t * eps[j]);
        s[j] = std::sin(t * eps[j]);
      }
    } else {
      for (std::size_t j = 0; j < m; ++j) {
        const double cn = c[j] * rc[j] - s[j] * rs[j];
        const double sn = s[j] * rc[j] + c[j] * rs[j];
        c[j] = cn;
        s[j] = sn;
      }
    }
    double sum_cos = 0.0;
    double sum_sin = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      sum_cos += c[j];
      sum_sin += s[j];
    }
    const double gauss = std::exp(-0.5 * t * t);
    double common = sum_cos - n * gauss + 0.5 * t * t * gauss * sum2;
    double odd = sum_sin;
    if (with_mean) odd -= gauss * t * sum1;
    // G(t) = common + odd, G(-t) = common - odd.
    const double wt = w[static_cast<Eigen::Index>(k)] * gauss / n;
    if (t == 0.0) {
      acc += wt * (common + odd) * (common + odd);
    } else {
      const std::size_t mirror = points - 1 - k;
      const double wm = w[static_cast<Eigen::Index>(mirror)] * gauss / n;
      acc += wt * (common + odd) * (common + odd) + wm * (common - odd) * (common - odd);
    }
  }
  return acc;
}

double asymptotic_expansion_sample(ExpansionKind kind, std::size_t n, std::uint64_t seed,
                                   std::uint64_t rep) {
  if (n < 1) throw ArgumentError("expansion needs n >= 1");
  Engine engine = make_stream(seed, StreamPurpose::kExpansion, {rep});
  std::normal_distribution<double> normal;
  std::vector<double> eps(n);
  for (auto& e : eps) e = normal(engine);
  return asymptotic_expansion_functional(kind, eps);
}

CritValTable expansion_critical_values(ExpansionKind kind, std::size_t n,
                                       std::span<const double> levels, std::size_t reps,
                                       std::uint64_t seed, unsigned threads) {
  if (reps < 1) throw ArgumentError("reps must be >= 1");
  std::vector<double> samples(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    samples[r] = asymptotic_expansion_sample(kind, n, seed, r);
  });
  CritValTable table = tabulate(std::move(samples), levels);
  table.kernel = std::string(to_string(kind)) + "(n=" + std::to_string(n) + ")";
  table.null_fingerprint = "standard_normal";
  table.functional = (kind == ExpansionKind::kD1Sum || kind == ExpansionKind::kD2Sum)
                         ? "CVM_INTEGRAL"
                         : "W_WEIGHTED_L2(gaussian)";
  table.grid_size = (kind == ExpansionKind::kD1Sum || kind == ExpansionKind::kD2Sum) ? 1000 : 601;
  table.seed = seed;
  return table;
}

}  // namespace fgof
