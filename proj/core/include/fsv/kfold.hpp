#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fsv/dataset.hpp"
#include "fsv/rng.hpp"
#include "fsv/sampling.hpp"

namespace fsv {

/// A partition of positions {0..sample_size-1} into k disjoint folds whose
/// sizes differ by at most one.
struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;
  std::size_t sample_size = 0;

  std::size_t k() const noexcept { return folds.size(); }
};

/// Shuffles the positions and slices them into k contiguous near-equal
/// folds; the first (sample_size % k) folds get the extra element.
/// Requires 2 <= k <= sample_size.
FoldPlan make_folds(std::size_t sample_size, std::size_t k, RngStream& stream);

/// Fit on the complement of one fold, scored on the fold.
struct FoldEvaluation {
  double train_mean = 0.0;
  double train_var = 0.0;
  double loss = 0.0;
};

/// For each fold i: fit(S \ S_i) and loss on S_i. Every fold needs at least
/// one element and its complement at least two.
std::vector<FoldEvaluation> evaluate_folds(std::span<const double> sample, const FoldPlan& plan);

/// Element i = loss(fit(S \ S_i), S_i).
std::vector<double> kfold_losses(std::span<const double> sample, const FoldPlan& plan);

/// Plain average of the fold losses.
double empirical_kfold_loss(std::span<const double> losses);

/// Non-negative per-fold scale factors. A zero weight drops its fold.
class LambdaWeights {
public:
  explicit LambdaWeights(std::vector<double> lambdas);

  /// All-ones weights; reduces the weighted loss to the plain average.
  static LambdaWeights uniform(std::size_t k);

  std::span<const double> values() const noexcept { return lambdas_; }
  std::size_t size() const noexcept { return lambdas_.size(); }

  /// True when sum(lambda) == k within `tolerance`.
  bool sums_to_k(double tolerance = 1e-9) const noexcept;

private:
  std::vector<double> lambdas_;
};

enum class WeightMode {
  kUnbiased,       // require sum(lambda) == k
  kUnconstrained,  // any positive weights
};

/// (1/k) * sum_i lambda_i * L_i.
double weighted_kfold_loss(std::span<const double> losses, const LambdaWeights& weights,
                           WeightMode mode = WeightMode::kUnbiased);

/// One SRS draw followed by one k-fold pass over the drawn sample.
struct DrawEvaluation {
  double fraction = 0.0;
  SampleView sample;
  double sample_mean = 0.0;
  double sample_var = 0.0;
  std::vector<FoldEvaluation> folds;
  /// Unweighted average of the fold losses (L_t of one FSV iteration).
  double fold_average_loss = 0.0;
};

/// Smallest working sample for which every fold of a k-fold plan has at
/// least one element and a training complement of at least two.
std::size_t minimum_sample_size(std::size_t k);

/// Draws a partition fraction (or uses the fixed size), takes an SRS of
/// round(f * n) points and evaluates a fresh k-fold plan on it. Streams come
/// from `schedule` for (trial, repetition).
DrawEvaluation evaluate_draw(const Dataset& data, std::size_t k, const SampleSizeRule& size_rule,
                             const SeedSchedule& schedule, std::uint32_t trial,
                             std::uint32_t repetition = 0);

struct KfcvConfig {
  std::size_t k = 5;
  std::size_t repetitions = 10;
  LambdaWeights weights = LambdaWeights::uniform(5);
  WeightMode weight_mode = WeightMode::kUnbiased;
  SampleSizeRule size_rule = FractionRange{};
};

struct KfcvEstimate {
  /// Average over repetitions and folds of the training-complement mean.
  double mean_estimate = 0.0;
  /// Same average for the training-complement variance.
  double var_estimate = 0.0;
  /// Average over repetitions of the lambda-weighted k-fold loss.
  double loss = 0.0;
  /// Loss on fold 0 of repetition 0.
  double first_fold_loss = 0.0;
};

/// Repeated KFCV: every repetition redraws the partition fraction, the SRS
/// sample and the fold plan.
KfcvEstimate repeated_kfcv(const Dataset& data, const KfcvConfig& config, const SeedSchedule& schedule,
                           std::uint32_t trial);

}  // namespace fsv
