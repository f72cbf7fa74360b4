#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "fgof/error.hpp"
#include "fgof/limit_dist.hpp"
#include "fgof/test_outcome.hpp"

using namespace fgof;

namespace {

const boost::math::normal_distribution<> kStd;
double Phi(double z) { return boost::math::cdf(kStd, z); }
double Phi_inv(double u) { return boost::math::quantile(kStd, u); }
double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi); }

template <class F>
double gk(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13);
}

// E[g(eps)] for eps ~ N(0,1), split at the given break point.
template <class F>
double normal_expectation(F g, double split = 0.0) {
  auto f = [&](double e) { return g(e) * phi(e); };
  return gk(f, -std::numeric_limits<double>::infinity(), split) +
         gk(f, split, std::numeric_limits<double>::infinity());
}

// Covariance of the dominating summands of the composite normal CvM test.
double cdf_summand_cov(bool with_mean, double s, double t) {
  const double y = Phi_inv(s);
  const double z = Phi_inv(t);
  auto psi = [&](double e, double x) {
    double v = (e <= x ? 1.0 : 0.0) - Phi(x) + 0.5 * (e * e - 1) * x * phi(x);
    if (with_mean) v += e * phi(x);
    return v;
  };
  auto f = [&](double e) { return psi(e, y) * psi(e, z) * phi(e); };
  const double lo = std::min(y, z);
  const double hi = std::max(y, z);
  const double inf = std::numeric_limits<double>::infinity();
  return gk(f, -inf, lo) + (hi > lo ? gk(f, lo, hi) : 0.0) + gk(f, hi, inf);
}

double ecf_summand_cov(bool with_mean, double s, double t) {
  auto psi = [&](double e, double x) {
    const double g = std::exp(-0.5 * x * x);
    double v = std::sin(x * e) + std::cos(x * e) + 0.5 * x * x * g * (e * e - 1) - g;
    if (with_mean) v -= g * x * e;
    return v;
  };
  return normal_expectation([&](double e) { return psi(e, s) * psi(e, t); });
}

std::vector<double> random_grid(std::mt19937_64& rng, std::size_t size, bool cdf) {
  std::uniform_real_distribution<double> u(cdf ? 0.0 : -6.0, cdf ? 1.0 : 6.0);
  std::vector<double> g;
  if (cdf) {
    g.push_back(0.0);
    g.push_back(1.0);
  }
  while (g.size() < size) g.push_back(u(rng));
  if (!cdf) {
    // symmetric grid
    std::vector<double> half(g.begin(), g.begin() + size / 2);
    g.clear();
    for (double x : half) {
      g.push_back(std::abs(x) + 1e-3);
      g.push_back(-std::abs(x) - 1e-3);
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

KernelSpec with_grid(KernelId id, std::vector<double> grid) {
  KernelSpec s;
  s.id = id;
  s.grid = std::move(grid);
  if (id == KernelId::kSimpleCdfAb1 || id == KernelId::kSimpleCdfAb2) {
    s.null_dist = NullDistribution::student_t(5);
  }
  if (id == KernelId::kC11 || id == KernelId::kC12) s.null_dist = NullDistribution::laplace(0.8);
  return s;
}

}  // namespace

TEST(KernelEval, PublishedExamples) {
  const auto d1 = KernelSpec::cdf(KernelId::kD1, 11);
  EXPECT_NEAR(kernel_eval(d1, 0.5, 0.5), 0.25 - 1 / (2 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(kernel_eval(d1, 0.5, 0.5), 0.090845, 5e-7);
  const auto c21 = KernelSpec::ecf(KernelId::kC21, 11);
  EXPECT_NEAR(kernel_eval(c21, 1.0, 1.0), 1 - 2.5 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(kernel_eval(c21, 1.0, 1.0), 0.080301, 5e-7);
  const auto bb = KernelSpec::cdf(KernelId::kSimpleCdfAb2, 11, NullDistribution::standard_normal());
  EXPECT_DOUBLE_EQ(kernel_eval(bb, 0.5, 0.5), 0.25);
  EXPECT_DOUBLE_EQ(kernel_eval(bb, 0.2, 0.7), 0.2 - 0.14);
  const auto ab1 = KernelSpec::cdf(KernelId::kSimpleCdfAb1, 11, NullDistribution::standard_normal());
  EXPECT_NEAR(kernel_eval(ab1, 0.5, 0.5), 0.25 - 1 / (2 * std::numbers::pi), 1e-12);
}

TEST(KernelEval, SimpleAb1ReducesForStandardNormal) {
  const auto spec = KernelSpec::cdf(KernelId::kSimpleCdfAb1, 11, NullDistribution::standard_normal());
  for (double y = -3; y <= 3; y += 0.25) {
    for (double z = -3; z <= 3; z += 0.25) {
      const double expected = Phi(std::min(y, z)) - Phi(y) * Phi(z) - phi(y) * phi(z);
      EXPECT_NEAR(kernel_eval(spec, Phi(y), Phi(z)), expected, 1e-10);
    }
  }
}

TEST(KernelEval, SimpleAb1NumericPartialMeanPath) {
  // A normal null handled through the generic partial-mean integral.
  NullDistribution generic = NullDistribution::normal(1.0);
  generic.mean_partial = [pdf = generic.pdf](double z) { return numeric_mean_partial(pdf, z); };
  generic.is_standard_normal = false;
  const auto a = KernelSpec::cdf(KernelId::kSimpleCdfAb1, 11, generic);
  const auto b = KernelSpec::cdf(KernelId::kSimpleCdfAb1, 11, NullDistribution::standard_normal());
  for (double s : {0.1, 0.4, 0.77}) {
    for (double t : {0.05, 0.5, 0.93}) EXPECT_NEAR(kernel_eval(a, s, t), kernel_eval(b, s, t), 1e-9);
  }
}

TEST(KernelEval, CompositeCdfKernelsMatchSummandCovariance) {
  const auto d1 = KernelSpec::cdf(KernelId::kD1, 11);
  const auto d2 = KernelSpec::cdf(KernelId::kD2, 11);
  for (double s : {0.03, 0.3, 0.5, 0.81}) {
    for (double t : {0.12, 0.5, 0.97}) {
      EXPECT_NEAR(kernel_eval(d1, s, t), cdf_summand_cov(true, s, t), 1e-9) << s << "," << t;
      EXPECT_NEAR(kernel_eval(d2, s, t), cdf_summand_cov(false, s, t), 1e-9) << s << "," << t;
    }
  }
}

TEST(KernelEval, CompositeEcfKernelsMatchSummandCovariance) {
  const auto c21 = KernelSpec::ecf(KernelId::kC21, 11);
  const auto c22 = KernelSpec::ecf(KernelId::kC22, 11);
  for (double s : {-2.5, -0.4, 0.0, 1.0, 3.3}) {
    for (double t : {-1.5, 0.2, 2.0}) {
      EXPECT_NEAR(kernel_eval(c21, s, t), ecf_summand_cov(true, s, t), 1e-9);
      EXPECT_NEAR(kernel_eval(c22, s, t), ecf_summand_cov(false, s, t), 1e-9);
    }
  }
}

TEST(KernelEval, GenericEcfPathMatchesClosedForm) {
  NullDistribution generic = NullDistribution::normal(1.0);
  generic.is_standard_normal = false;
  for (auto id : {KernelId::kC11, KernelId::kC12}) {
    const auto closed = KernelSpec::ecf(id, 11);
    const auto numeric = KernelSpec::ecf(id, 11, 6.0, generic);
    for (double s : {-3.0, -0.5, 0.7, 2.2}) {
      for (double t : {-1.0, 0.3, 4.0}) {
        EXPECT_NEAR(kernel_eval(numeric, s, t), kernel_eval(closed, s, t), 1e-10);
      }
    }
  }
}

TEST(KernelSpec, Validation) {
  EXPECT_THROW(KernelSpec::cdf(KernelId::kSimpleCdfAb1, 10), ConfigurationError);
  EXPECT_THROW(KernelSpec::cdf(KernelId::kSimpleCdfAb2, 10), ConfigurationError);
  EXPECT_THROW(KernelSpec::cdf(KernelId::kC21, 10), ArgumentError);
  EXPECT_THROW(KernelSpec::cdf(KernelId::kD1, 1), ArgumentError);
  KernelSpec bad = with_grid(KernelId::kD1, {0.0, 0.5, 0.5, 1.0});
  EXPECT_THROW(bad.validate(), ArgumentError);
  KernelSpec asym = with_grid(KernelId::kC21, {-1.0, 0.0, 2.0});
  EXPECT_THROW(asym.validate(), ArgumentError);
  KernelSpec missing;
  missing.id = KernelId::kSimpleCdfAb1;
  missing.grid = {0.0, 1.0};
  EXPECT_THROW(kernel_eval(missing, 0.2, 0.3), ConfigurationError);
  const auto ecf = KernelSpec::ecf(KernelId::kC22);
  EXPECT_EQ(ecf.grid.size(), 601u);
  EXPECT_EQ(ecf.grid[300], 0.0);
  EXPECT_EQ(ecf.grid.front(), -6.0);
  EXPECT_EQ(KernelSpec::cdf(KernelId::kD2).grid.size(), 1000u);
}

TEST(KernelProperty, SymmetricAndPsdOnRandomGrids) {
  std::mt19937_64 rng(31);
  for (auto id : {KernelId::kD1, KernelId::kD2, KernelId::kC11, KernelId::kC12, KernelId::kC21,
                  KernelId::kC22, KernelId::kSimpleCdfAb1, KernelId::kSimpleCdfAb2}) {
    for (std::size_t size : {5, 60, 200}) {
      const auto spec = with_grid(id, random_grid(rng, size, is_cdf_kernel(id)));
      spec.validate();
      const Eigen::MatrixXd k = gram_matrix(spec);
      EXPECT_LT((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-14) << to_string(id);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8) << to_string(id) << " size " << size;
      const double s = spec.grid[1];
      const double t = spec.grid[spec.grid.size() - 2];
      EXPECT_EQ(kernel_eval(spec, s, t), kernel_eval(spec, t, s));
    }
  }
}

TEST(Simulate, BrownianBridgeCvmMeanIsOneSixth) {
  const auto spec = KernelSpec::cdf(KernelId::kSimpleCdfAb2, 1000, NullDistribution::standard_normal());
  const auto draws = simulate_functional(spec, Functional::cvm(), 100000, 3);
  double mean = 0;
  for (double d : draws) mean += d;
  mean /= draws.size();
  EXPECT_NEAR(mean, 1.0 / 6.0, 0.005);
}

TEST(Simulate, D1MeanMatchesIntegratedVariance) {
  // E int G^2 = int_0^1 K(u,u) du, computed on the y scale.
  const double expected = normal_expectation([](double y) {
    const double u = Phi(y);
    return u * (1 - u) - phi(y) * phi(y) * (1 + 0.5 * y * y);
  });
  const auto spec = KernelSpec::cdf(KernelId::kD1, 1000);
  const auto draws = simulate_functional(spec, Functional::cvm(), 40000, 4);
  double mean = 0;
  double sq = 0;
  for (double d : draws) {
    mean += d;
    sq += d * d;
  }
  mean /= draws.size();
  const double se = std::sqrt((sq / draws.size() - mean * mean) / draws.size());
  EXPECT_NEAR(mean, expected, 4 * se + 2e-4);
}

TEST(Simulate, ZeroProcessGivesZeroFunctionals) {
  const auto spec = KernelSpec::cdf(KernelId::kD1, 2);  // only the endpoints
  GaussianProcessSampler sampler(spec);
  EXPECT_EQ(sampler.active_points(), 0u);
  for (const auto& f : {Functional::cvm(), Functional::ks_sup()}) {
    for (double v : sampler.sample_functional(f, 50, 1)) EXPECT_EQ(v, 0.0);
  }
}

TEST(Simulate, DropsZeroVariancePointsAndUsesSmallJitter) {
  GaussianProcessSampler cdf(KernelSpec::cdf(KernelId::kD2, 101));
  EXPECT_EQ(cdf.active_points(), 99u);
  EXPECT_LE(cdf.jitter(), 1e-6);
  GaussianProcessSampler ecf(KernelSpec::ecf(KernelId::kC21, 101));
  EXPECT_EQ(ecf.active_points(), 100u);
  EXPECT_LE(ecf.jitter(), 1e-6);
}

TEST(Simulate, RejectsZeroReps) {
  EXPECT_THROW(simulate_functional(KernelSpec::cdf(KernelId::kD1, 50), Functional::cvm(), 0, 1),
               ArgumentError);
}

TEST(Simulate, DeterministicAcrossThreadCounts) {
  const auto spec = KernelSpec::ecf(KernelId::kC22, 121);
  const auto one = simulate_functional(spec, Functional::weighted_l2(), 700, 9, 1);
  const auto four = simulate_functional(spec, Functional::weighted_l2(), 700, 9, 4);
  const auto again = simulate_functional(spec, Functional::weighted_l2(), 700, 9, 3);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, again);
  // A prefix of a longer run is the shorter run.
  const auto longer = simulate_functional(spec, Functional::weighted_l2(), 1000, 9, 2);
  EXPECT_TRUE(std::equal(one.begin(), one.end(), longer.begin()));
}

TEST(UpperQuantile, CeilingOrderStatistic) {
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i + 1;
  EXPECT_EQ(upper_quantile(v, 0.05).first, 95.0);
  EXPECT_EQ(upper_quantile(v, 0.15).first, 85.0);
  EXPECT_EQ(upper_quantile(v, 0.01).first, 99.0);
  EXPECT_EQ(upper_quantile(v, 0.025).first, 98.0);  // ceil(97.5)
  EXPECT_GT(upper_quantile(v, 0.05).second, 0.0);
  EXPECT_EQ(upper_quantile(std::vector<double>{3.0}, 0.05).second, 0.0);
  EXPECT_THROW(upper_quantile(v, 1.0), ArgumentError);
  EXPECT_THROW(upper_quantile(std::vector<double>{}, 0.1), ArgumentError);
}

TEST(CriticalValues, TableInvariantsAndDeterminism) {
  const auto spec = KernelSpec::cdf(KernelId::kD1, 400);
  const auto a = critical_values(spec, Functional::cvm(), tabled_levels(), 5000, 77, 1);
  const auto b = critical_values(spec, Functional::cvm(), tabled_levels(), 5000, 77, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.mc_stderr, b.mc_stderr);
  EXPECT_EQ(a.kernel, "D1");
  EXPECT_EQ(a.grid_size, 400u);
  EXPECT_EQ(a.reps, 5000u);
  double previous = INFINITY;
  for (const auto& [level, value] : a.values) {
    EXPECT_LT(value, previous);
    previous = value;
    EXPECT_GT(a.mc_stderr.at(level), 0.0);
  }
  const auto c = critical_values(spec, Functional::cvm(), tabled_levels(), 5000, 78, 1);
  EXPECT_NE(a.values, c.values);
  EXPECT_THROW(critical_values(spec, Functional::cvm(), std::vector<double>{0.0}, 10, 1),
               ArgumentError);
}

TEST(CriticalValues, GridRefinementStaysWithinMonteCarloError) {
  const std::vector<double> level{0.05};
  for (auto id : {KernelId::kD1, KernelId::kD2}) {
    std::vector<CritValTable> tables;
    for (std::size_t g : {250, 500, 1000}) {
      tables.push_back(critical_values(KernelSpec::cdf(id, g), Functional::cvm(), level, 20000, 5));
    }
    for (std::size_t i = 0; i + 1 < tables.size(); ++i) {
      const double se = std::max(tables[i].mc_stderr.at(0.05), tables[i + 1].mc_stderr.at(0.05));
      EXPECT_LT(std::abs(tables[i].values.at(0.05) - tables[i + 1].values.at(0.05)), 3 * se)
          << to_string(id);
    }
  }
}

TEST(Expansion, SinglePointD1SumMatchesQuadrature) {
  // G(u) = I{0 <= y} - u - y phi(y) / 2 with y = Phi^{-1}(u).
  const double exact = normal_expectation(
      [](double y) {
        const double g = (y >= 0 ? 1.0 : 0.0) - Phi(y) - 0.5 * y * phi(y);
        return g * g;
      },
      0.0);
  const std::vector<double> eps{0.0};
  EXPECT_NEAR(asymptotic_expansion_functional(ExpansionKind::kD1Sum, eps), exact, 1e-3);
  EXPECT_NEAR(asymptotic_expansion_functional(ExpansionKind::kD1Sum, eps, 20001), exact, 5e-5);
}

TEST(Expansion, ZeroErrorsC22SumMatchesQuadrature) {
  const std::vector<double> eps{0.0, 0.0, 0.0};
  const double exact = 3.0 * gk(
                                 [](double t) {
                                   const double g = std::exp(-0.5 * t * t);
                                   const double v = 1 - g - 0.5 * t * t * g;
                                   return v * v * g;
                                 },
                                 -6.0, 6.0);
  EXPECT_NEAR(asymptotic_expansion_functional(ExpansionKind::kC22Sum, eps), exact, 1e-8);
}

TEST(Expansion, C21SumMatchesDirectEvaluation) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> z;
  std::vector<double> eps(37);
  for (auto& e : eps) e = z(rng);
  const auto spec = KernelSpec::ecf(KernelId::kC21, 601);
  const Eigen::VectorXd w = trapezoid_weights_on(spec.grid);
  double s1 = 0, s2 = 0;
  for (double e : eps) {
    s1 += e;
    s2 += e * e - 1;
  }
  double direct = 0;
  for (std::size_t k = 0; k < spec.grid.size(); ++k) {
    const double t = spec.grid[k];
    const double g = std::exp(-0.5 * t * t);
    double sum = 0;
    for (double e : eps) sum += std::sin(t * e) + std::cos(t * e) - g;
    sum += -g * t * s1 + 0.5 * t * t * g * s2;
    direct += w[k] * g * sum * sum / eps.size();
  }
  EXPECT_NEAR(asymptotic_expansion_functional(ExpansionKind::kC21Sum, eps), direct,
              1e-10 * direct);
}

TEST(Expansion, SampleIsSeedDeterministic) {
  EXPECT_EQ(asymptotic_expansion_sample(ExpansionKind::kD2Sum, 50, 3, 7),
            asymptotic_expansion_sample(ExpansionKind::kD2Sum, 50, 3, 7));
  EXPECT_NE(asymptotic_expansion_sample(ExpansionKind::kD2Sum, 50, 3, 7),
            asymptotic_expansion_sample(ExpansionKind::kD2Sum, 50, 3, 8));
  EXPECT_THROW(asymptotic_expansion_sample(ExpansionKind::kD2Sum, 0, 3), ArgumentError);
}
