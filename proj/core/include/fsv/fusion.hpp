#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fsv/dataset.hpp"
#include "fsv/kfold.hpp"
#include "fsv/metrics.hpp"
#include "fsv/rng.hpp"
#include "fsv/sampling.hpp"

namespace fsv {

/// Fusion sampling validation: T iterations of (SRS draw, k-fold pass),
/// each iteration's loss weighted by alpha and averaged.
struct FsvConfig {
  double alpha = 0.95;
  std::size_t iterations = 100;
  std::size_t k = 5;
  SampleSizeRule size_rule = FractionRange{};

  /// Throws ValidationError unless 0 < alpha <= 1, iterations >= 1, k >= 2.
  void validate() const;

  /// Human-readable notes for settings that are valid but unusual, such as
  /// alpha outside [0.8, 1.0].
  std::vector<std::string> warnings() const;
};

struct FsvResult {
  /// L* = (1/T) * sum_t alpha * L_t.
  double compounded = 0.0;
  /// Unweighted (1/T) * sum_t L_t. Equals compounded / alpha; this is the
  /// quantity whose expectation is the held-out loss.
  double raw_mean = 0.0;
  double alpha = 1.0;
  /// L_t for every iteration, before alpha weighting.
  std::vector<double> per_iteration_loss;
  /// Per-iteration statistics with every field scaled by alpha; mse is
  /// alpha * L_t.
  std::vector<TrialMetrics> per_iteration_stats;
};

/// Unweighted metrics of one draw: mean/var of the drawn sample, the
/// fold-average loss as mse and fold 0's loss for bias. An SRS trial
/// reports exactly this; an FSV iteration reports it scaled by alpha.
TrialMetrics draw_metrics(const DrawEvaluation& draw, const Dataset& data);

/// alpha * (1/T) * sum(per_iteration). Throws on an empty vector or
/// alpha <= 0.
double compound_measure(std::span<const double> per_iteration, double alpha);

/// Returns the dataset that iteration t draws from.
using DatasetProvider = std::function<std::shared_ptr<const Dataset>(std::uint32_t iteration)>;

/// Runs the algorithm on one fixed dataset. Iteration t uses the streams
/// schedule.stream(t, ...), so iterations are independent and the result
/// does not depend on `jobs`.
FsvResult fsv_run(const Dataset& data, const FsvConfig& config, const SeedSchedule& schedule,
                  std::size_t jobs = 1);

/// Same, with each iteration drawing from the dataset `provider` returns.
FsvResult fsv_run(const DatasetProvider& provider, const FsvConfig& config, const SeedSchedule& schedule,
                  std::size_t jobs = 1);

}  // namespace fsv
