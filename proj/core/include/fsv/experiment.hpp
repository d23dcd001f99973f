#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsv/metrics.hpp"
#include "fsv/rng.hpp"
#include "fsv/sampling.hpp"

namespace fsv {

/// Where the trials of a cell get their data.
enum class DatasetMode {
  kPerTrial,  ///< every trial draws a fresh dataset of size N from its own stream
  kFixed,     ///< one dataset per N, shared by all trials and methods
};

std::string_view dataset_mode_name(DatasetMode mode) noexcept;  // "per_trial" | "fixed"
DatasetMode parse_dataset_mode(std::string_view name);

/// Study grid and protocol. Defaults:
/// N in {10^4, 5*10^4, 10^5}, T in {10, 50, 100}, 5 folds, 10 repetitions,
/// alpha 0.95, seed 42, partition fraction uniform on [0.6, 0.9], N(0, 1).
struct ExperimentConfig {
  std::vector<std::size_t> sizes{10000, 50000, 100000};
  std::vector<std::size_t> trials{10, 50, 100};
  std::size_t k = 5;
  std::size_t repetitions = 10;
  double alpha = 0.95;
  std::optional<std::vector<double>> lambdas;
  std::uint64_t base_seed = 42;
  FractionRange fraction_range{};
  double mu = 0.0;
  double sigma2 = 1.0;
  /// SRS and FSV consume identical draws, so FSV == alpha * SRS exactly.
  bool shared_streams = false;
  DatasetMode dataset_mode = DatasetMode::kPerTrial;

  /// Throws ValidationError describing the first invalid field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Overrides fields of `config` from `key = value` lines. Blank lines and
/// text after '#' are ignored. Keys are the field names above, plus
/// `seed`, `fraction_min` and `fraction_max`; lists are comma separated.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// Canonical `key = value` form; apply_config_text inverts it.
std::string to_config_text(const ExperimentConfig& config);

/// Hex digest of the canonical config text.
std::string config_hash(const ExperimentConfig& config);

/// Three summaries for one (N, T) cell plus the per-trial records.
struct CellReport {
  std::size_t n = 0;
  std::size_t T = 0;
  std::array<MethodSummary, 3> summaries{};
  std::array<std::vector<TrialMetrics>, 3> trials{};
  /// L* and its unweighted counterpart for the FSV arm.
  double fsv_compounded = 0.0;
  double fsv_raw_mean = 0.0;

  const MethodSummary& summary(Method m) const noexcept { return summaries[static_cast<std::size_t>(m)]; }
  const std::vector<TrialMetrics>& trials_of(Method m) const noexcept {
    return trials[static_cast<std::size_t>(m)];
  }

  friend bool operator==(const CellReport&, const CellReport&) = default;
};

struct RunMetadata {
  std::string config_hash;
  std::string version;
  double wall_time_seconds = 0.0;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CellReport> cells;  ///< sizes-major, then trials
  RunMetadata metadata;

  /// Throws ValidationError when no cell matches.
  const CellReport& cell(std::size_t n, std::size_t T) const;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

struct RunOptions {
  std::size_t jobs = 0;  ///< 0 = all available cores
};

/// Runs SRS, repeated KFCV and FSV for one (N, T) cell.
CellReport run_cell(const ExperimentConfig& config, std::size_t n, std::size_t T, const RunOptions& options = {});

/// Runs every (N, T) cell of the grid. Deterministic per config, for any
/// number of jobs.
ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Version string stamped into reports.
std::string_view library_version() noexcept;

}  // namespace fsv
