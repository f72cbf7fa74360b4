// Command-line front end: critical values, tests on data, simulation studies.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fgof/critval_cache.hpp"
#include "fgof/csv_io.hpp"
#include "fgof/error.hpp"
#include "fgof/harness.hpp"
#include "fgof/limit_dist.hpp"
#include "fgof/null_distribution.hpp"
#include "fgof/test_outcome.hpp"

namespace {

void print_rejections(const fgof::RejectionTable& table) {
  if (!table.title.empty()) std::cout << table.title << "\n";
  std::printf("%-14s %-4s %5s %9s %6s %7s %10s %7s %10s\n", "block", "test", "n", "param",
              "level", "valid", "reject%", "se", "published");
  for (const auto& c : table.cells) {
    std::printf("%-14s %-4s %5zu %9g %6g %7zu %10.1f %7.2f ", c.block.c_str(),
                fgof::to_string(c.test), c.n, c.parameter, c.level, c.valid, c.percent(), c.se());
    if (c.published) {
      std::printf("%10.1f\n", *c.published);
    } else {
      std::printf("%10s\n", "-");
    }
  }
}

std::vector<fgof::TestFamily> parse_tests(const std::vector<std::string>& names) {
  std::vector<fgof::TestFamily> out;
  for (const auto& n : names) out.push_back(fgof::test_family_from_string(n));
  return out;
}

fgof::ErrorFamily::Kind parse_errors(const std::string& text) {
  if (text == "gaussian") return fgof::ErrorFamily::Kind::kGaussianStd;
  if (text == "skew_normal") return fgof::ErrorFamily::Kind::kSkewNormal;
  if (text == "student_t") return fgof::ErrorFamily::Kind::kStudentT;
  throw fgof::ArgumentError("unknown error family '" + text +
                            "' (expected gaussian, skew_normal or student_t)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goodness-of-fit tests for the error distribution in functional linear models"};
  app.require_subcommand(1);

  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  std::string cache_path;
  std::vector<double> levels(fgof::tabled_levels());
  app.add_option("--seed", seed, "Base RNG seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--cache-path", cache_path,
                 "JSON file caching simulated critical values (empty: no cache)");
  app.add_option("--levels", levels, "Nominal levels")->delimiter(',')->capture_default_str();

  // critvals
  auto* critvals = app.add_subcommand("critvals", "Simulate asymptotic critical values");
  std::size_t cv_reps = 100000;
  std::string cv_out = "critvals";
  std::string cv_kernel;
  std::string cv_null;
  std::string cv_functional = "default";
  std::size_t cv_grid = 0;
  critvals->add_option("--reps", cv_reps, "Monte Carlo replications")->capture_default_str();
  critvals->add_option("--out", cv_out, "Output directory for table<k>.csv (all six tables)")
      ->capture_default_str();
  critvals->add_option("--kernel", cv_kernel,
                       "Single kernel: D1, D2, C11, C12, C21, C22, SIMPLE_CDF_AB1, "
                       "SIMPLE_CDF_AB2 (default: all six tabled kernels)");
  critvals->add_option("--null", cv_null,
                       "Null distribution for simple kernels: normal[:sigma], t:df[:scale], "
                       "laplace:b");
  critvals->add_option("--functional", cv_functional, "default, cvm, ks or wl2")
      ->capture_default_str();
  critvals->add_option("--grid", cv_grid, "Grid points (default 1000 for CDF, 601 for ECF kernels)");

  // test
  auto* test = app.add_subcommand("test", "Test a dataset for normal errors");
  std::string x_path;
  std::string y_path;
  bool header = false;
  std::string regime = "ab1";
  std::vector<std::string> test_names{"cvm", "ecf"};
  bool simulate_cv = false;
  std::size_t sim_reps = 100000;
  int m = 3;
  std::string report_path;
  test->add_option("--x", x_path, "CSV of covariates, one row per curve")->required();
  test->add_option("--y", y_path, "Responses, one per line")->required();
  test->add_flag("--header", header, "Both files start with a header line");
  test->add_option("--regime", regime, "ab1, ab2 or misspecified_ab2")->capture_default_str();
  test->add_option("--tests", test_names, "cvm and/or ecf")->delimiter(',')->capture_default_str();
  test->add_flag("--simulate-critvals", simulate_cv,
                 "Simulate critical values instead of the built-in tables");
  test->add_option("--critval-reps", sim_reps, "Replications for simulated critical values")
      ->capture_default_str();
  test->add_option("--m", m, "Derivative order of the roughness penalty")->capture_default_str();
  test->add_option("--report", report_path, "Write the JSON report here (also printed)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Rejection rates over the simulation design");
  std::vector<std::size_t> ns{100};
  std::string variant = "mean_nonzero";
  std::string errors = "skew_normal";
  std::vector<double> params{0.0};
  std::vector<std::string> sim_tests{"cvm", "ecf"};
  std::string sim_regime = "ab1";
  std::size_t replications = 500;
  std::size_t grid_p = 300;
  std::string sim_out;
  bool sim_simulate_cv = false;
  simulate->add_option("--n", ns, "Sample sizes")->delimiter(',')->capture_default_str();
  simulate->add_option("--variant", variant, "Covariate centring: mean_nonzero or mean_zero")
      ->capture_default_str();
  simulate->add_option("--errors", errors, "gaussian, skew_normal or student_t")
      ->capture_default_str();
  simulate->add_option("--param", params, "delta (skew_normal) or df (student_t) values")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--tests", sim_tests, "cvm and/or ecf")->delimiter(',')->capture_default_str();
  simulate->add_option("--regime", sim_regime, "ab1, ab2 or misspecified_ab2")
      ->capture_default_str();
  simulate->add_option("--reps", replications, "Replications per cell")->capture_default_str();
  simulate->add_option("--p", grid_p, "Grid points per curve")->capture_default_str();
  simulate->add_option("--out", sim_out, "CSV output path");
  simulate->add_flag("--simulate-critvals", sim_simulate_cv,
                     "Simulate critical values instead of the built-in tables");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Reproduce a rejection-rate table");
  std::string table_id;
  std::string scale = "desk";
  std::string repro_out;
  repro->add_option("table", table_id, "T7, T8, T9 or T10")->required();
  repro->add_option("--scale", scale, "desk (n=100, 200 reps) or full (n=100,200, 500 reps)")
      ->capture_default_str();
  repro->add_option("--out", repro_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (*critvals) {
      if (cv_kernel.empty()) {
        const auto rows = fgof::emit_critval_tables(levels, cv_reps, seed, cv_out, threads,
                                                    cache_path);
        std::printf("%-6s %-4s %6s %10s %9s %9s %s\n", "table", "kern", "level", "value", "se",
                    "published", "result");
        for (const auto& r : rows) {
          std::printf("%-6d %-4s %6g %10.4f %9.4f %9.3f %s\n", r.table, fgof::to_string(r.kernel),
                      r.level, r.value, r.mc_stderr, r.published.value_or(0.0),
                      r.pass ? "pass" : "FAIL");
        }
        return 0;
      }
      const fgof::KernelId id = fgof::kernel_from_string(cv_kernel);
      std::optional<fgof::NullDistribution> null;
      if (!cv_null.empty()) null = fgof::NullDistribution::parse(cv_null);
      const bool cdf = fgof::is_cdf_kernel(id);
      const fgof::KernelSpec spec = cdf ? fgof::KernelSpec::cdf(id, cv_grid ? cv_grid : 1000, null)
                                        : fgof::KernelSpec::ecf(id, cv_grid ? cv_grid : 601, 6.0, null);
      fgof::Functional functional = cdf ? fgof::Functional::cvm() : fgof::Functional::weighted_l2();
      if (cv_functional == "cvm") {
        functional = fgof::Functional::cvm();
      } else if (cv_functional == "ks") {
        functional = fgof::Functional::ks_sup();
      } else if (cv_functional == "wl2") {
        functional = fgof::Functional::weighted_l2();
      } else if (cv_functional != "default") {
        throw fgof::ArgumentError("unknown functional '" + cv_functional + "'");
      }
      const auto table =
          fgof::cache_get_or_compute(cache_path, spec, functional, levels, cv_reps, seed, threads);
      std::cout << "kernel " << table.kernel << ", null " << table.null_fingerprint
                << ", functional " << table.functional << ", reps " << table.reps << ", grid "
                << table.grid_size << ", seed " << table.seed << "\n";
      std::cout << "level,critical_value,mc_stderr\n";
      for (const auto& [level, value] : table.values) {
        std::cout << fgof::format_double(level) << ',' << fgof::format_double(value) << ','
                  << fgof::format_double(table.mc_stderr.at(level)) << "\n";
      }
      return 0;
    }
    if (*test) {
      fgof::DatasetOptions options;
      options.header = header;
      options.regime = fgof::fit_regime_from_string(regime);
      options.tests = parse_tests(test_names);
      options.levels = levels;
      options.m = m;
      options.seed = seed;
      options.report_path = report_path;
      if (simulate_cv) {
        options.critvals = fgof::CritValSource::simulated(sim_reps, seed, cache_path);
        options.critvals.threads = threads;
      }
      std::cout << fgof::test_dataset(x_path, y_path, options);
      return 0;
    }
    if (*simulate) {
      fgof::ExperimentPlan plan;
      plan.ns = ns;
      if (variant == "mean_zero") {
        plan.variant = fgof::CovariateVariant::kMeanZero;
      } else if (variant != "mean_nonzero") {
        throw fgof::ArgumentError("unknown covariate variant '" + variant + "'");
      }
      plan.error_kind = parse_errors(errors);
      plan.parameters = params;
      plan.tests = parse_tests(sim_tests);
      plan.regime = fgof::fit_regime_from_string(sim_regime);
      plan.replications = replications;
      plan.levels = levels;
      plan.seed = seed;
      plan.threads = threads;
      plan.p = grid_p;
      plan.output_path = sim_out;
      if (sim_simulate_cv) {
        plan.critvals = fgof::CritValSource::simulated(100000, seed, cache_path);
        plan.critvals.threads = threads;
      }
      print_rejections(fgof::run_experiment(plan));
      return 0;
    }
    if (*repro) {
      fgof::ReproduceScale s;
      if (scale == "desk") {
        s = fgof::ReproduceScale::kDesk;
      } else if (scale == "full") {
        s = fgof::ReproduceScale::kFull;
      } else {
        throw fgof::ArgumentError("unknown scale '" + scale + "' (expected desk or full)");
      }
      const auto table = fgof::reproduce(table_id, s, seed, threads);
      print_rejections(table);
      if (!repro_out.empty()) table.write_csv(repro_out);
      return 0;
    }
  } catch (const fgof::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
