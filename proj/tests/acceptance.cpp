// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/Dense>

#include "fgof/dgp.hpp"
#include "fgof/estimator.hpp"
#include "fgof/gof_cdf.hpp"
#include "fgof/gof_ecf.hpp"
#include "fgof/harness.hpp"
#include "fgof/limit_dist.hpp"

using namespace fgof;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Result {
  int id;
  bool pass;
  std::string summary;
};

std::vector<Result> results;

void report(int id, bool pass, const std::string& summary) {
  results.push_back({id, pass, summary});
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void critval_tables() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = fs::temp_directory_path() / "fgof_acceptance_tables";
  fs::create_directories(dir);
  const auto rows = emit_critval_tables(tabled_levels(), 100000, kSeed, dir.string());
  int passed = 0;
  for (const auto& r : rows) {
    if (r.pass) {
      ++passed;
    } else {
      std::printf("  table %d %s level %g: %.4f (se %.4f) vs published %.4g, tolerance %.4f\n",
                  r.table, to_string(r.kernel), r.level, r.value, r.mc_stderr, *r.published,
                  r.tolerance);
    }
  }
  std::ostringstream s;
  s << passed << "/" << rows.size() << " tabled constants within max(3 se, 2%) ("
    << fmt("%.0f", seconds_since(t0)) << " s)";
  report(1, passed == static_cast<int>(rows.size()) && rows.size() == 30, s.str());
}

void two_paths() {
  const std::vector<double> level{0.05};
  const std::size_t reps = 20000;
  bool ok = true;
  std::ostringstream s;
  const std::pair<KernelId, ExpansionKind> pairs[] = {{KernelId::kD1, ExpansionKind::kD1Sum},
                                                      {KernelId::kD2, ExpansionKind::kD2Sum},
                                                      {KernelId::kC21, ExpansionKind::kC21Sum},
                                                      {KernelId::kC22, ExpansionKind::kC22Sum}};
  for (const auto& [kernel, kind] : pairs) {
    const auto spec = is_cdf_kernel(kernel) ? KernelSpec::cdf(kernel) : KernelSpec::ecf(kernel);
    const auto functional = is_cdf_kernel(kernel) ? Functional::cvm() : Functional::weighted_l2();
    const auto a = critical_values(spec, functional, level, reps, kSeed);
    const auto b = expansion_critical_values(kind, 5000, level, reps, kSeed + 1);
    const double joint = std::hypot(a.mc_stderr.at(0.05), b.mc_stderr.at(0.05));
    const double diff = std::abs(a.values.at(0.05) - b.values.at(0.05));
    const bool pass = diff <= 3 * joint;
    ok = ok && pass;
    std::printf("  %s: kernel %.4f, expansion %.4f, joint se %.4f\n", to_string(kernel),
                a.values.at(0.05), b.values.at(0.05), joint);
    s << to_string(kernel) << (pass ? " ok " : " off ");
  }
  report(2, ok, s.str() + "(alpha 0.05, n 5000, 2e4 reps each)");
}

RejectionTable t7;
RejectionTable t8;

void level_calibration() {
  const auto t0 = std::chrono::steady_clock::now();
  t7 = reproduce("T7", ReproduceScale::kDesk, kSeed);
  const auto* cvm = t7.find("skew_normal", TestFamily::kCvm, 100, 0.0);
  const auto* ecf = t7.find("skew_normal", TestFamily::kEcf, 100, 0.0);
  const bool pass = cvm && ecf && cvm->percent() >= 2.0 && cvm->percent() <= 9.0 &&
                    ecf->percent() >= 1.5 && ecf->percent() <= 8.5;
  std::ostringstream s;
  s << "T7 desk delta=0: CvM " << (cvm ? cvm->percent() : NAN) << "%, ECF "
    << (ecf ? ecf->percent() : NAN) << "% (" << fmt("%.0f", seconds_since(t0)) << " s)";
  report(3, pass, s.str());
}

void power_trends() {
  t8 = reproduce("T8", ReproduceScale::kDesk, kSeed);
  bool ok = true;
  std::ostringstream s;
  for (auto test : {TestFamily::kCvm, TestFamily::kEcf}) {
    double prev = -1;
    s << to_string(test) << " delta:";
    for (double d : {0.0, 0.4, 1.0}) {
      const auto* c = t7.find("skew_normal", test, 100, d);
      const double v = c ? c->percent() : NAN;
      ok = ok && v >= prev;
      prev = v;
      s << " " << v;
    }
    prev = 101;
    s << "; df:";
    for (double df : {3.0, 5.0, 7.0}) {
      const auto* c = t8.find("student_t", test, 100, df);
      const double v = c ? c->percent() : NAN;
      ok = ok && v <= prev;
      prev = v;
      s << " " << v;
    }
    s << "; ";
  }
  const auto* df3 = t8.find("student_t", TestFamily::kCvm, 100, 3.0);
  ok = ok && df3 && df3->percent() >= 70.0;
  s << "CvM df=3 " << (df3 ? df3->percent() : NAN) << "%";
  report(4, ok, s.str());
}

void misspecification() {
  const auto t9 = reproduce("T9", ReproduceScale::kDesk, kSeed);
  const RejectionCell* cell = nullptr;
  for (const auto& c : t9.cells) {
    if (c.block == "mean_nonzero" && c.parameter == 0.0 && c.test == TestFamily::kCvm) cell = &c;
  }
  const bool pass = cell && cell->percent() <= 2.0;
  report(5, pass,
         "T9 desk misspecified delta=0 CvM " + (cell ? fmt("%.1f", cell->percent()) : "n/a") + "%");
}

double cvm_by_quadrature(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  std::vector<double> knots{0.0};
  knots.insert(knots.end(), u.begin(), u.end());
  knots.push_back(1.0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double level = static_cast<double>(k) / n;
    total += boost::math::quadrature::gauss<double, 7>::integrate(
        [&](double x) { return (level - x) * (level - x); }, knots[k], knots[k + 1]);
  }
  return n * total;
}

double ecf_by_quadrature(const std::vector<double>& res) {
  auto integrand = [&](double t) {
    double c = 0, s = 0;
    for (double e : res) {
      c += std::cos(t * e);
      s += std::sin(t * e);
    }
    c /= res.size();
    s /= res.size();
    const double g = std::exp(-0.5 * t * t);
    return ((c - g) * (c - g) + s * s) * g;
  };
  return 2.0 * res.size() *
         boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
             integrand, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-14);
}

void exactness() {
  const auto null = NullDistribution::standard_normal();
  const boost::math::normal_distribution<> nd;
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> z;
  double worst_cvm = 0, worst_ecf = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> res(10 + rep % 60);
    for (auto& r : res) r = 0.9 * z(rng) + 0.3 * z(rng) * z(rng);
    std::vector<double> u;
    for (double r : res) u.push_back(boost::math::cdf(nd, r));
    worst_cvm = std::max(worst_cvm, std::abs(cvm_simple(res, null) - cvm_by_quadrature(u)));
    worst_ecf = std::max(worst_ecf, std::abs(ecf_simple_statistic(res, null) - ecf_by_quadrature(res)));
  }
  std::ostringstream s;
  s << "max |closed - quadrature| over 100 sets: CvM " << worst_cvm << ", ECF " << worst_ecf;
  report(6, worst_cvm <= 1e-8 && worst_ecf <= 1e-8, s.str());
}

void kernel_properties() {
  std::mt19937_64 rng(kSeed);
  double worst_sym = 0, worst_eig = 0;
  for (auto id : {KernelId::kD1, KernelId::kD2, KernelId::kC11, KernelId::kC12, KernelId::kC21,
                  KernelId::kC22, KernelId::kSimpleCdfAb1, KernelId::kSimpleCdfAb2}) {
    for (std::size_t size : {10, 50, 200}) {
      const bool cdf = is_cdf_kernel(id);
      std::uniform_real_distribution<double> u(cdf ? 0.0 : 0.01, cdf ? 1.0 : 6.0);
      std::vector<double> grid;
      if (cdf) {
        grid = {0.0, 1.0};
        while (grid.size() < size) grid.push_back(u(rng));
      } else {
        while (grid.size() < size) {
          const double t = u(rng);
          grid.push_back(t);
          grid.push_back(-t);
        }
      }
      std::sort(grid.begin(), grid.end());
      KernelSpec spec;
      spec.id = id;
      spec.grid = grid;
      if (id == KernelId::kSimpleCdfAb1 || id == KernelId::kSimpleCdfAb2) {
        spec.null_dist = NullDistribution::student_t(4);
      }
      if (id == KernelId::kC11 || id == KernelId::kC12) spec.null_dist = NullDistribution::laplace(1.0);
      const Eigen::MatrixXd k = gram_matrix(spec);
      worst_sym = std::max(worst_sym, (k - k.transpose()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
      worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
    }
  }
  const boost::math::normal_distribution<> nd;
  const auto ab1 = KernelSpec::cdf(KernelId::kSimpleCdfAb1, 10, NullDistribution::standard_normal());
  double worst_red = 0;
  for (double y = -3; y <= 3; y += 0.1) {
    for (double x = -3; x <= 3; x += 0.1) {
      const double expected = boost::math::cdf(nd, std::min(x, y)) -
                              boost::math::cdf(nd, x) * boost::math::cdf(nd, y) -
                              boost::math::pdf(nd, x) * boost::math::pdf(nd, y);
      worst_red = std::max(worst_red, std::abs(kernel_eval(ab1, boost::math::cdf(nd, x),
                                                           boost::math::cdf(nd, y)) - expected));
    }
  }
  std::ostringstream s;
  s << "asymmetry " << worst_sym << ", min eigenvalue " << worst_eig << ", AB1 reduction error "
    << worst_red;
  report(7, worst_sym == 0.0 && worst_eig >= -1e-8 && worst_red <= 1e-10, s.str());
}

void residual_gap() {
  std::vector<double> medians;
  std::ostringstream s;
  s << "medians";
  for (std::size_t n : {100, 200, 400}) {
    std::vector<double> gaps;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      DgpConfig cfg;
      cfg.n = n;
      cfg.errors = ErrorFamily::gaussian();
      cfg.seed = seed;
      const auto sample = generate(cfg);
      const auto f = fit_gcv(sample, 3, default_lambda_grid(), Regime::kWithIntercept);
      gaps.push_back(residual_gap_diagnostic(f, sample));
    }
    std::nth_element(gaps.begin(), gaps.begin() + 10, gaps.end());
    const double upper = gaps[10];
    const double lower = *std::max_element(gaps.begin(), gaps.begin() + 10);
    medians.push_back(0.5 * (lower + upper));
    s << " n=" << n << ": " << medians.back();
  }
  report(8, medians[0] > medians[1] && medians[1] > medians[2], s.str());
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  bool ok = true;
  std::vector<std::string> broken;
  auto check = [&](const std::string& what, bool same) {
    if (!same) broken.push_back(what);
    ok = ok && same;
  };
  const std::vector<double> levels{0.1, 0.05};

  const auto spec = KernelSpec::ecf(KernelId::kC21);
  check("critical_values", critical_values(spec, Functional::weighted_l2(), levels, 3000, 7, 1).values ==
                               critical_values(spec, Functional::weighted_l2(), levels, 3000, 7, 4).values);
  check("expansion", expansion_critical_values(ExpansionKind::kD1Sum, 300, levels, 500, 7, 1).values ==
                         expansion_critical_values(ExpansionKind::kD1Sum, 300, levels, 500, 7, 3).values);

  DgpConfig cfg;
  cfg.errors = ErrorFamily::student_t(5);
  cfg.seed = 9;
  const auto s1 = generate(cfg);
  const auto s2 = generate(cfg);
  check("generate", s1.ys == s2.ys && *s1.true_errors == *s2.true_errors);
  const auto f1 = fit_gcv(s1, 3, default_lambda_grid(), Regime::kWithIntercept);
  const auto f2 = fit_gcv(s2, 3, default_lambda_grid(), Regime::kWithIntercept);
  check("fit_gcv", f1.residuals == f2.residuals && f1.lambda == f2.lambda);

  ExperimentPlan plan;
  plan.ns = {60};
  plan.parameters = {0.0, 1.0};
  plan.tests = {TestFamily::kCvm, TestFamily::kEcf};
  plan.replications = 40;
  plan.seed = 5;
  plan.threads = 1;
  const auto r1 = run_experiment(plan);
  plan.threads = 4;
  const auto r2 = run_experiment(plan);
  bool same = r1.cells.size() == r2.cells.size();
  for (std::size_t i = 0; same && i < r1.cells.size(); ++i) {
    same = r1.cells[i].rejections == r2.cells[i].rejections && r1.cells[i].valid == r2.cells[i].valid;
  }
  check("run_experiment", same);

  const auto a = fs::temp_directory_path() / "fgof_acceptance_det_a";
  const auto b = fs::temp_directory_path() / "fgof_acceptance_det_b";
  fs::create_directories(a);
  fs::create_directories(b);
  emit_critval_tables(levels, 500, 3, a.string(), 1);
  emit_critval_tables(levels, 500, 3, b.string(), 3);
  bool tables = true;
  for (int k = 1; k <= 6; ++k) {
    const std::string name = "table" + std::to_string(k) + ".csv";
    tables = tables && read_all(a / name) == read_all(b / name) && !read_all(a / name).empty();
  }
  check("emit_critval_tables", tables);

  std::string summary = "bit-identical across runs and thread counts";
  if (!ok) {
    summary = "differs:";
    for (const auto& w : broken) summary += " " + w;
  }
  report(9, ok, summary);
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void()>>> steps{
      {1, critval_tables},   {2, two_paths},         {3, level_calibration},
      {4, power_trends},     {5, misspecification},  {6, exactness},
      {7, kernel_properties}, {8, residual_gap},     {9, determinism}};
  for (const auto& [id, step] : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      report(id, false, std::string("error: ") + e.what());
    }
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const Result& r) { return !r.pass; });
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
