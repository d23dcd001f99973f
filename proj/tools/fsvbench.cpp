// fsvbench: runs the SRS / KFCV / FSV validation study and the closed-form
// calculators from the command line.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fsv/error.hpp"
#include "fsv/experiment.hpp"
#include "fsv/fusion.hpp"
#include "fsv/report_io.hpp"
#include "fsv/selftest.hpp"
#include "fsv/stattheory.hpp"

namespace {

struct ConfigFlags {
  std::string config_file;
  std::uint64_t seed = 42;
  double alpha = 0.95;
  std::size_t k = 5;
  std::size_t reps = 10;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> trials;
  std::vector<double> lambdas;
  double fraction_min = 0.6;
  double fraction_max = 0.9;
  double mu = 0.0;
  double sigma2 = 1.0;
  std::string dataset_mode;
  bool shared_streams = false;

  std::vector<std::pair<std::string, CLI::Option*>> options;
};

struct OutputFlags {
  std::string out_dir;
  std::vector<std::string> formats{"md"};
  std::size_t jobs = 0;
};

void add_config_flags(CLI::App& app, ConfigFlags& f, bool with_grid) {
  app.add_option("--config", f.config_file, "key = value config file; flags override it")->check(CLI::ExistingFile);
  f.options = {
      {"seed", app.add_option("--seed", f.seed, "base seed (default 42)")},
      {"alpha", app.add_option("--alpha", f.alpha, "FSV weighted factor in (0, 1] (default 0.95)")},
      {"k", app.add_option("--k", f.k, "number of folds (default 5)")},
      {"reps", app.add_option("--reps,--repetitions", f.reps, "KFCV repetitions (default 10)")},
      {"lambdas", app.add_option("--lambdas", f.lambdas, "per-fold scale factors, must sum to k")->delimiter(',')},
      {"fraction_min", app.add_option("--fraction-min", f.fraction_min, "lower partition fraction (default 0.6)")},
      {"fraction_max", app.add_option("--fraction-max", f.fraction_max, "upper partition fraction (default 0.9)")},
      {"mu", app.add_option("--mu", f.mu, "population mean (default 0)")},
      {"sigma2", app.add_option("--sigma2", f.sigma2, "population variance (default 1)")},
      {"dataset_mode", app.add_option("--dataset-mode", f.dataset_mode, "per_trial (default) or fixed")
                           ->check(CLI::IsMember({"per_trial", "fixed"}))},
      {"shared_streams", app.add_flag("--shared-streams", f.shared_streams, "SRS and FSV consume identical draws")},
  };
  if (with_grid) {
    f.options.emplace_back("sizes", app.add_option("--sizes", f.sizes, "dataset sizes, e.g. 10000,50000,100000")
                                        ->delimiter(','));
    f.options.emplace_back("trials",
                           app.add_option("--trials", f.trials, "trial counts, e.g. 10,50,100")->delimiter(','));
  }
}

void add_output_flags(CLI::App& app, OutputFlags& o) {
  app.add_option("--out", o.out_dir, "output directory (default: print to stdout)");
  app.add_option("--format", o.formats, "md, csv, json and/or plot (comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember({"md", "csv", "json", "plot"}));
  app.add_option("--jobs", o.jobs, "worker threads (default: all cores)");
}

bool given(const ConfigFlags& f, const std::string& name) {
  for (const auto& [key, opt] : f.options) {
    if (key == name) {
      return opt->count() > 0;
    }
  }
  return false;
}

fsv::ExperimentConfig build_config(const ConfigFlags& f) {
  fsv::ExperimentConfig cfg;
  if (!f.config_file.empty()) {
    fsv::apply_config_file(cfg, f.config_file);
  }
  if (given(f, "seed")) cfg.base_seed = f.seed;
  if (given(f, "alpha")) cfg.alpha = f.alpha;
  if (given(f, "k")) cfg.k = f.k;
  if (given(f, "reps")) cfg.repetitions = f.reps;
  if (given(f, "lambdas")) cfg.lambdas = f.lambdas;
  if (given(f, "fraction_min")) cfg.fraction_range.lo = f.fraction_min;
  if (given(f, "fraction_max")) cfg.fraction_range.hi = f.fraction_max;
  if (given(f, "mu")) cfg.mu = f.mu;
  if (given(f, "sigma2")) cfg.sigma2 = f.sigma2;
  if (given(f, "dataset_mode")) cfg.dataset_mode = fsv::parse_dataset_mode(f.dataset_mode);
  if (given(f, "shared_streams")) cfg.shared_streams = f.shared_streams;
  if (given(f, "sizes")) cfg.sizes = f.sizes;
  if (given(f, "trials")) cfg.trials = f.trials;
  cfg.validate();

  fsv::FsvConfig probe;
  probe.alpha = cfg.alpha;
  for (const auto& w : probe.warnings()) {
    std::cerr << "warning: " << w << '\n';
  }
  return cfg;
}

void emit(const fsv::ExperimentReport& report, const OutputFlags& o) {
  const std::set<std::string> formats(o.formats.begin(), o.formats.end());
  const bool to_stdout = o.out_dir.empty();
  const std::filesystem::path dir = o.out_dir;

  if (formats.count("md")) {
    std::set<std::size_t> sizes;
    for (const auto& cell : report.cells) {
      sizes.insert(cell.n);
    }
    for (std::size_t n : sizes) {
      const std::string table = fsv::emit_markdown_table(report, n);
      if (to_stdout) {
        std::cout << table << '\n';
      } else {
        fsv::write_text_file(dir / fmt::format("table_N{}.md", n), table);
      }
    }
  }
  if (formats.count("csv")) {
    if (to_stdout) {
      std::cout << fsv::summary_csv(report);
    } else {
      fsv::emit_csv(report, dir);
    }
  }
  if (formats.count("json")) {
    if (to_stdout) {
      std::cout << fsv::to_json(report).dump(2) << '\n';
    } else {
      fsv::emit_json(report, dir / "report.json");
    }
  }
  if (formats.count("plot")) {
    if (to_stdout) {
      throw fsv::ValidationError("--format plot needs --out DIR");
    }
    fsv::emit_plotdata(report, dir);
  }
  if (!to_stdout) {
    std::cerr << fmt::format("wrote results to {} ({:.2f} s)\n", dir.string(), report.metadata.wall_time_seconds);
  }
}

struct TheoryFlags {
  double sigma2 = 1.0;
  std::size_t n = 7500;
  std::size_t N = 10000;
  std::vector<double> fold_variances{0.0013, 0.0013, 0.0013, 0.0013, 0.0013};
  std::size_t T = 10;
  double k_dev = 2.0;
  double epsilon = 0.1;
  double a = 0.0;
  double b = 1.0;
};

void print_theory(const TheoryFlags& t) {
  const auto budget = fsv::hybrid_variance(t.sigma2, t.n, t.N, t.fold_variances, t.T);
  const double sigma_hyb2 = budget.srs_component + budget.kfcv_component;
  const auto hoeffding = fsv::hoeffding_tail(t.epsilon, t.T, t.a, t.b);
  fmt::print("variance budget\n");
  fmt::print("  srs component        {:.6e}\n", budget.srs_component);
  fmt::print("  kfcv component       {:.6e}\n", budget.kfcv_component);
  fmt::print("  total / T (T={})     {:.6e}\n", budget.T, budget.total_per_T);
  fmt::print("chebyshev (k_dev={})\n", t.k_dev);
  fmt::print("  tail bound           {:.6g}\n", fsv::chebyshev_tail(t.k_dev));
  fmt::print("  deviation threshold  {:.6e}\n", fsv::chebyshev_threshold(sigma_hyb2, t.T, t.k_dev));
  fmt::print("hoeffding (eps={}, [a,b]=[{}, {}])\n", t.epsilon, t.a, t.b);
  fmt::print("  raw bound            {:.6g}\n", hoeffding.raw);
  fmt::print("  reported bound       {:.6g}\n", hoeffding.capped);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple random sampling, k-fold and fusion sampling validation study"};
  app.require_subcommand(1);

  ConfigFlags run_cfg;
  OutputFlags run_out;
  auto* run = app.add_subcommand("run", "run the full (N, T) grid");
  add_config_flags(*run, run_cfg, true);
  add_output_flags(*run, run_out);

  ConfigFlags cell_cfg;
  OutputFlags cell_out;
  std::size_t cell_n = 10000;
  std::size_t cell_t = 10;
  auto* cell = app.add_subcommand("cell", "run one (N, T) cell");
  cell->add_option("--n", cell_n, "dataset size")->required();
  cell->add_option("--t", cell_t, "number of trials")->required();
  add_config_flags(*cell, cell_cfg, false);
  add_output_flags(*cell, cell_out);

  TheoryFlags theory_flags;
  auto* theory = app.add_subcommand("theory", "variance budget and concentration bounds");
  theory->add_option("--sigma2", theory_flags.sigma2, "population variance");
  theory->add_option("--n", theory_flags.n, "sample size per iteration");
  theory->add_option("--N", theory_flags.N, "dataset size");
  theory->add_option("--fold-var", theory_flags.fold_variances, "per-fold loss variances")->delimiter(',');
  theory->add_option("--T", theory_flags.T, "iterations");
  theory->add_option("--k-dev", theory_flags.k_dev, "Chebyshev deviation multiple");
  theory->add_option("--epsilon", theory_flags.epsilon, "Hoeffding deviation");
  theory->add_option("--a", theory_flags.a, "loss lower bound");
  theory->add_option("--b", theory_flags.b, "loss upper bound");

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = build_config(run_cfg);
      emit(fsv::run_experiment(cfg, fsv::RunOptions{run_out.jobs}), run_out);
    } else if (cell->parsed()) {
      auto cfg = build_config(cell_cfg);
      cfg.sizes = {cell_n};
      cfg.trials = {cell_t};
      emit(fsv::run_experiment(cfg, fsv::RunOptions{cell_out.jobs}), cell_out);
    } else if (theory->parsed()) {
      print_theory(theory_flags);
    } else if (selftest->parsed()) {
      int failures = 0;
      for (const auto& c : fsv::run_selftest()) {
        fmt::print("[{}] {}{}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail.empty() ? "" : ": " + c.detail);
        failures += c.passed ? 0 : 1;
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const fsv::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
