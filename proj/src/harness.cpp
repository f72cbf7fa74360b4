#include "fgof/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "fgof/critval_cache.hpp"
#include "fgof/csv_io.hpp"
#include "fgof/error.hpp"
#include "fgof/estimator.hpp"
#include "fgof/gof_cdf.hpp"
#include "fgof/gof_ecf.hpp"
#include "fgof/parallel.hpp"
#include "fgof/reference_tables.hpp"

namespace fgof {

namespace {

TestRegime critval_regime(FitRegime regime) {
  return regime == FitRegime::kAb1 ? TestRegime::kAb1 : TestRegime::kAb2;
}

Regime estimator_regime(FitRegime regime) {
  return regime == FitRegime::kAb1 ? Regime::kWithIntercept : Regime::kNoIntercept;
}

// Centre responses and covariates by their sample means.
void centre_sample(FunctionalSample& sample) {
  const GridFunction mean_x = mean_function(sample.xs);
  for (auto& x : sample.xs) x -= mean_x;
  double mean_y = 0.0;
  for (double y : sample.ys) mean_y += y;
  mean_y /= static_cast<double>(sample.ys.size());
  for (double& y : sample.ys) y -= mean_y;
}

FitResult fit_for(FunctionalSample& sample, FitRegime regime, int m) {
  static const std::vector<double> grid = default_lambda_grid();
  if (regime == FitRegime::kMisspecifiedAb2) centre_sample(sample);
  return fit_gcv(sample, m, grid, estimator_regime(regime));
}

double statistic_for(TestFamily family, std::span<const double> residuals) {
  return family == TestFamily::kCvm ? cvm_composite_normal(residuals)
                                    : ecf_composite_normal_statistic(residuals);
}

void check_writable(const std::string& path) {
  if (path.empty()) return;
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  const bool existed = std::filesystem::exists(p);
  {
    std::ofstream probe(p, std::ios::app);
    if (!probe) throw ConfigurationError("output path is not writable: " + path);
  }
  if (!existed) std::filesystem::remove(p, ec);
}

std::string level_key(double level) { return format_double(level); }

}  // namespace

const char* to_string(TestFamily family) noexcept {
  return family == TestFamily::kCvm ? "CVM" : "ECF";
}

const char* to_string(FitRegime regime) noexcept {
  switch (regime) {
    case FitRegime::kAb1: return "AB1";
    case FitRegime::kAb2: return "AB2";
    case FitRegime::kMisspecifiedAb2: return "MISSPECIFIED_AB2";
  }
  return "?";
}

TestFamily test_family_from_string(const std::string& text) {
  if (text == "CVM" || text == "cvm") return TestFamily::kCvm;
  if (text == "ECF" || text == "ecf") return TestFamily::kEcf;
  throw ArgumentError("unknown test family '" + text + "' (expected cvm or ecf)");
}

FitRegime fit_regime_from_string(const std::string& text) {
  if (text == "AB1" || text == "ab1") return FitRegime::kAb1;
  if (text == "AB2" || text == "ab2") return FitRegime::kAb2;
  if (text == "MISSPECIFIED_AB2" || text == "misspecified_ab2") return FitRegime::kMisspecifiedAb2;
  throw ArgumentError("unknown regime '" + text + "' (expected ab1, ab2 or misspecified_ab2)");
}

void ExperimentPlan::validate() const {
  if (replications < 1) throw ConfigurationError("replications must be >= 1");
  if (ns.empty()) throw ConfigurationError("no sample sizes given");
  for (auto n : ns) {
    if (n < 3) throw ConfigurationError("sample sizes must be >= 3");
  }
  if (parameters.empty()) throw ConfigurationError("no error-distribution parameters given");
  if (tests.empty()) throw ConfigurationError("no test families given");
  if (levels.empty()) throw ConfigurationError("no levels given");
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) throw ConfigurationError("levels must lie in (0,1)");
  }
  if (p < 2 || static_cast<int>(p) <= m) throw ConfigurationError("grid size must exceed m");
  for (double param : parameters) {
    DgpConfig probe;
    probe.p = p;
    probe.errors = {error_kind, param};
    probe.validate();
  }
  check_writable(output_path);
}

double RejectionCell::percent() const {
  return valid == 0 ? 0.0 : 100.0 * static_cast<double>(rejections) / static_cast<double>(valid);
}

double RejectionCell::se() const {
  if (valid == 0) return 0.0;
  const double q = static_cast<double>(rejections) / static_cast<double>(valid);
  return 100.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(valid));
}

const RejectionCell* RejectionTable::find(const std::string& block, TestFamily test,
                                          std::size_t n, double parameter, double level) const {
  for (const auto& c : cells) {
    if (c.block == block && c.test == test && c.n == n && c.parameter == parameter &&
        c.level == level) {
      return &c;
    }
  }
  return nullptr;
}

void RejectionTable::append(const RejectionTable& other) {
  cells.insert(cells.end(), other.cells.begin(), other.cells.end());
  replications = std::max(replications, other.replications);
}

void RejectionTable::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigurationError("cannot write " + path);
  out << "block,test,n,parameter,level,replications,valid,failures,rejection_pct,se_pct,published_pct\n";
  out << std::fixed;
  for (const auto& c : cells) {
    out << c.block << ',' << to_string(c.test) << ',' << c.n << ',' << format_double(c.parameter)
        << ',' << format_double(c.level) << ',' << (c.valid + c.failures) << ',' << c.valid << ','
        << c.failures << ',' << std::setprecision(2) << c.percent() << ',' << c.se() << ',';
    if (c.published) out << std::setprecision(1) << *c.published;
    out << '\n';
  }
}

std::map<double, double> composite_critical_values(TestFamily family, TestRegime regime,
                                                   std::span<const double> levels,
                                                   const CritValSource& source,
                                                   std::string* provenance) {
  KernelId kernel;
  if (family == TestFamily::kCvm) {
    kernel = regime == TestRegime::kAb1 ? KernelId::kD1 : KernelId::kD2;
  } else {
    kernel = regime == TestRegime::kAb1 ? KernelId::kC21 : KernelId::kC22;
  }
  std::map<double, double> out;
  if (source.kind == CritValSource::Kind::kBuiltin) {
    for (double level : levels) {
      const auto c = reference::critval(kernel, level);
      if (!c) {
        throw ArgumentError("no built-in critical value at level " + format_double(level) +
                            "; use simulated critical values");
      }
      out[level] = *c;
    }
    if (provenance) *provenance = "builtin";
    return out;
  }
  const KernelSpec spec = family == TestFamily::kCvm
                              ? KernelSpec::cdf(kernel, source.cdf_grid)
                              : KernelSpec::ecf(kernel, source.ecf_grid, source.ecf_half_width);
  const Functional functional =
      family == TestFamily::kCvm ? Functional::cvm() : Functional::weighted_l2();
  const CritValTable table = simulated_critical_values(spec, functional, levels, source);
  for (double level : levels) out[level] = table.values.at(level);
  if (provenance) *provenance = cache_key(spec, functional, source.reps, source.seed);
  return out;
}

RejectionTable run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const TestRegime regime = critval_regime(plan.regime);
  std::vector<std::map<double, double>> critvals;
  for (auto family : plan.tests) {
    critvals.push_back(composite_critical_values(family, regime, plan.levels, plan.critvals));
  }
  std::vector<double> params = plan.parameters;
  if (plan.error_kind == ErrorFamily::Kind::kGaussianStd) params = {0.0};

  RejectionTable table;
  table.replications = plan.replications;
  const std::size_t tests = plan.tests.size();

  for (std::size_t n : plan.ns) {
    for (double param : params) {
      // One row of statistics per replication; NaN marks a failed replication.
      std::vector<std::vector<double>> stats(plan.replications,
                                             std::vector<double>(tests, std::nan("")));
      std::vector<char> failed(plan.replications, 0);
      parallel_for(plan.replications, plan.threads, [&](std::size_t r) {
        DgpConfig config;
        config.n = n;
        config.p = plan.p;
        config.variant = plan.variant;
        config.errors = {plan.error_kind, param};
        config.seed = plan.seed;
        config.stream = r;
        try {
          FunctionalSample sample = generate(config);
          const FitResult fit = fit_for(sample, plan.regime, plan.m);
          for (std::size_t k = 0; k < tests; ++k) {
            stats[r][k] = statistic_for(plan.tests[k], fit.residuals);
          }
        } catch (const NumericalError&) {
          failed[r] = 1;
        }
      });
      std::size_t failures = 0;
      for (char f : failed) failures += f ? 1 : 0;
      if (static_cast<double>(failures) > 0.01 * static_cast<double>(plan.replications)) {
        std::ostringstream msg;
        msg << failures << " of " << plan.replications << " replications failed (n=" << n
            << ", parameter=" << param << "); aborting";
        throw NumericalError(msg.str());
      }
      for (std::size_t k = 0; k < tests; ++k) {
        for (double level : plan.levels) {
          RejectionCell cell;
          cell.block = plan.block;
          cell.test = plan.tests[k];
          cell.n = n;
          cell.parameter = param;
          cell.level = level;
          cell.failures = failures;
          const double c = critvals[k].at(level);
          for (std::size_t r = 0; r < plan.replications; ++r) {
            if (failed[r]) continue;
            ++cell.valid;
            if (stats[r][k] > c) ++cell.rejections;
          }
          table.cells.push_back(cell);
        }
      }
    }
  }
  if (!plan.output_path.empty()) table.write_csv(plan.output_path);
  return table;
}

RejectionTable reproduce(const std::string& table_id, ReproduceScale scale, std::uint64_t seed,
                         unsigned threads, const CritValSource& critvals) {
  const bool desk = scale == ReproduceScale::kDesk;
  ExperimentPlan base;
  base.ns = desk ? std::vector<std::size_t>{100} : std::vector<std::size_t>{100, 200};
  base.replications = desk ? 200 : 500;
  base.levels = {0.05};
  base.seed = seed;
  base.threads = threads;
  base.critvals = critvals;

  const std::vector<double> deltas_sn =
      desk ? std::vector<double>{0, 0.4, 1} : reference::cvm_skew_normal().parameters;
  const std::vector<double> deltas_miss =
      desk ? std::vector<double>{0, 0.4, 1} : reference::misspecified_mean_zero().parameters;
  const std::vector<double> dfs =
      desk ? std::vector<double>{3, 5, 7} : reference::cvm_student_t().parameters;

  struct Part {
    ExperimentPlan plan;
    std::map<TestFamily, const reference::RejectionRow*> published;
  };
  std::vector<Part> parts;
  RejectionTable table;

  if (table_id == "T7" || table_id == "T10") {
    ExperimentPlan plan = base;
    plan.block = "skew_normal";
    plan.error_kind = ErrorFamily::Kind::kSkewNormal;
    plan.parameters = deltas_sn;
    if (table_id == "T7") {
      plan.tests = {TestFamily::kCvm, TestFamily::kEcf};
      parts.push_back({plan, {{TestFamily::kCvm, &reference::cvm_skew_normal()},
                              {TestFamily::kEcf, &reference::ecf_skew_normal()}}});
    } else {
      plan.tests = {TestFamily::kEcf};
      parts.push_back({plan, {{TestFamily::kEcf, &reference::ecf_skew_normal()}}});
    }
    table.title = table_id + ": rejection rates under skew-normal errors";
  } else if (table_id == "T8") {
    ExperimentPlan plan = base;
    plan.block = "student_t";
    plan.error_kind = ErrorFamily::Kind::kStudentT;
    plan.parameters = dfs;
    plan.tests = {TestFamily::kCvm, TestFamily::kEcf};
    parts.push_back({plan, {{TestFamily::kCvm, &reference::cvm_student_t()},
                            {TestFamily::kEcf, &reference::ecf_student_t()}}});
    table.title = "T8: rejection rates under Student-t errors";
  } else if (table_id == "T9") {
    ExperimentPlan zero = base;
    zero.block = "mean_zero";
    zero.variant = CovariateVariant::kMeanZero;
    zero.regime = FitRegime::kAb2;
    zero.error_kind = ErrorFamily::Kind::kSkewNormal;
    zero.parameters = deltas_miss;
    zero.tests = {TestFamily::kCvm};
    parts.push_back({zero, {{TestFamily::kCvm, &reference::misspecified_mean_zero()}}});
    ExperimentPlan nonzero = zero;
    nonzero.block = "mean_nonzero";
    nonzero.variant = CovariateVariant::kMeanNonzero;
    nonzero.regime = FitRegime::kMisspecifiedAb2;
    parts.push_back({nonzero, {{TestFamily::kCvm, &reference::misspecified_mean_nonzero()}}});
    table.title = "T9: no-intercept fits, mean-zero covariates and centred misspecified model";
  } else {
    throw ArgumentError("unknown table '" + table_id + "' (expected T7, T8, T9 or T10)");
  }

  for (const auto& part : parts) {
    RejectionTable result = run_experiment(part.plan);
    for (auto& cell : result.cells) {
      const auto it = part.published.find(cell.test);
      if (it != part.published.end()) cell.published = reference::lookup(*it->second, cell.n, cell.parameter);
    }
    table.append(result);
  }
  return table;
}

std::vector<CritValComparison> emit_critval_tables(std::span<const double> levels,
                                                   std::size_t reps, std::uint64_t seed,
                                                   const std::string& output_dir,
                                                   unsigned threads,
                                                   const std::string& cache_path) {
  if (reps < 1) throw ArgumentError("reps must be >= 1");
  if (!output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) throw ConfigurationError("cannot create output directory " + output_dir);
  }
  std::vector<CritValComparison> all;
  for (const auto& row : reference::critval_tables()) {
    const bool cdf = is_cdf_kernel(row.kernel);
    const KernelSpec spec = cdf ? KernelSpec::cdf(row.kernel) : KernelSpec::ecf(row.kernel);
    const Functional functional = cdf ? Functional::cvm() : Functional::weighted_l2();
    const CritValTable table =
        cache_get_or_compute(cache_path, spec, functional, levels, reps, seed, threads);
    std::vector<CritValComparison> rows;
    for (double level : levels) {
      CritValComparison c;
      c.table = row.table;
      c.kernel = row.kernel;
      c.level = level;
      c.value = table.values.at(level);
      c.mc_stderr = table.mc_stderr.at(level);
      c.published = reference::critval(row.kernel, level);
      if (c.published) {
        c.tolerance = std::max(3.0 * c.mc_stderr, 0.02 * std::abs(*c.published));
        c.pass = std::abs(c.value - *c.published) <= c.tolerance;
      }
      rows.push_back(c);
    }
    if (!output_dir.empty()) {
      const std::string path =
          (std::filesystem::path(output_dir) / ("table" + std::to_string(row.table) + ".csv"))
              .string();
      std::ofstream out(path, std::ios::trunc);
      if (!out) throw ConfigurationError("cannot write " + path);
      out << "kernel,level,critical_value,mc_stderr,published,tolerance,pass\n";
      for (const auto& c : rows) {
        out << to_string(c.kernel) << ',' << format_double(c.level) << ','
            << format_double(c.value) << ',' << format_double(c.mc_stderr) << ','
            << (c.published ? format_double(*c.published) : "") << ','
            << format_double(c.tolerance) << ',' << (c.published ? (c.pass ? "pass" : "FAIL") : "")
            << '\n';
      }
    }
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

std::string test_dataset(const std::string& x_path, const std::string& y_path,
                         const DatasetOptions& options) {
  const auto x_rows = read_numeric_csv(x_path, options.header);
  const auto ys = read_numeric_column(y_path, options.header);
  const std::size_t n = x_rows.size();
  const std::size_t p = x_rows.front().size();
  if (ys.size() != n) {
    std::ostringstream msg;
    msg << "dimension mismatch: X (" << x_path << ") is " << n << " x " << p << " but Y ("
        << y_path << ") has " << ys.size() << " values";
    throw IngestionError(msg.str());
  }
  if (p < 2) throw IngestionError(x_path + ": need at least 2 grid columns");
  if (n < 3) throw IngestionError(x_path + ": need at least 3 observations");
  if (n <= p) {
    std::cerr << "warning: n = " << n << " <= p = " << p
              << "; the roughness penalty keeps the fit well-posed\n";
  }
  check_writable(options.report_path);

  FunctionalSample sample;
  sample.ys = ys;
  sample.xs.reserve(n);
  for (const auto& row : x_rows) sample.xs.emplace_back(row);
  const FitResult fit = fit_for(sample, options.regime, options.m);

  using nlohmann::ordered_json;
  ordered_json report;
  report["schema_version"] = 1;
  report["inputs"] = {{"x_path", x_path}, {"y_path", y_path}, {"n", n}, {"p", p}};
  report["fit"] = {{"regime", to_string(options.regime)},
                   {"m", options.m},
                   {"alpha_hat", fit.alpha_hat},
                   {"lambda", fit.lambda},
                   {"theta_hat", fit.theta_hat},
                   {"effective_df", fit.effective_df},
                   {"gcv", fit.gcv}};

  const TestRegime regime = critval_regime(options.regime);
  ordered_json tests = ordered_json::array();
  ordered_json keys = ordered_json::array();
  for (auto family : options.tests) {
    TestOutcome outcome =
        family == TestFamily::kCvm
            ? run_cdf_test(fit.residuals, CdfHypothesis::composite_normal(), regime,
                           options.levels, options.critvals)
            : run_ecf_test(fit.residuals, EcfHypothesis::composite_normal(), regime,
                           options.levels, options.critvals);
    ordered_json crit = ordered_json::object();
    ordered_json rej = ordered_json::object();
    for (const auto& [level, c] : outcome.critical_values) {
      crit[level_key(level)] = c;
      rej[level_key(level)] = outcome.rejected.at(level);
    }
    tests.push_back({{"family", to_string(outcome.family)},
                     {"regime", to_string(outcome.regime)},
                     {"n", outcome.n},
                     {"statistic", outcome.statistic},
                     {"critical_values", crit},
                     {"rejected", rej},
                     {"critval_provenance", outcome.critval_provenance}});
    keys.push_back(outcome.critval_provenance);
  }
  report["tests"] = tests;
  const bool simulated = options.critvals.kind == CritValSource::Kind::kSimulated;
  report["provenance"] = {{"seed", options.seed},
                          {"critval_source", simulated ? "simulated" : "builtin"},
                          {"critval_reps", simulated ? options.critvals.reps : 0},
                          {"critval_seed", simulated ? options.critvals.seed : 0},
                          {"cache_path", options.critvals.cache_path},
                          {"cache_keys", keys}};
  const std::string text = report.dump(2) + "\n";
  if (!options.report_path.empty()) {
    std::ofstream out(options.report_path, std::ios::trunc);
    if (!out) throw ConfigurationError("cannot write " + options.report_path);
    out << text;
  }
  return text;
}

}  // namespace fgof
