#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace fsv {

enum class Method { kSrs = 0, kKfcv = 1, kFsv = 2 };

inline constexpr std::array<Method, 3> kAllMethods{Method::kSrs, Method::kKfcv, Method::kFsv};

std::string_view method_name(Method m) noexcept;  // "SRS", "KF", "FSV"
Method parse_method(std::string_view name);

/// The six per-trial quantities, in table row order.
enum class Metric { kMeanEst = 0, kVarEst, kMse, kBias, kRocMean, kRocVar };

inline constexpr std::size_t kMetricCount = 6;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics{Metric::kMeanEst, Metric::kVarEst, Metric::kMse,
                                                             Metric::kBias,    Metric::kRocMean, Metric::kRocVar};

/// Machine name used in CSV/JSON: mean_est, var_est, mse, bias, roc_me, roc_ve.
std::string_view metric_key(Metric m) noexcept;
/// Row label prefix used in markdown tables, e.g. "Mean est." or "ROC Var est.".
std::string_view metric_label(Metric m) noexcept;
Metric parse_metric(std::string_view key);

/// Per-trial record for one method.
///
/// roc_me = |mean_est - mu|, roc_ve = |var_est - sigma2| and
/// bias = |single validation-fold loss - sigma2|; all three are absolute
/// deviations and therefore non-negative.
struct TrialMetrics {
  double mean_est = 0.0;
  double var_est = 0.0;
  double mse = 0.0;
  double bias = 0.0;
  double roc_me = 0.0;
  double roc_ve = 0.0;

  double get(Metric m) const noexcept;
  void set(Metric m, double value) noexcept;

  friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

TrialMetrics trial_metrics(double mean_est, double var_est, double mse, double true_mean, double true_var,
                           double fold_loss_for_bias);

/// Every field multiplied by `factor`.
TrialMetrics scaled(const TrialMetrics& m, double factor) noexcept;

struct MetricStat {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const MetricStat&, const MetricStat&) = default;
};

/// Mean/min/max of each metric over the trials of one method in one cell.
struct MethodSummary {
  Method method = Method::kSrs;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::array<MetricStat, kMetricCount> stats{};

  const MetricStat& stat(Metric m) const noexcept { return stats[static_cast<std::size_t>(m)]; }

  friend bool operator==(const MethodSummary&, const MethodSummary&) = default;
};

/// Throws ValidationError on an empty trial list.
MethodSummary summarize(std::span<const TrialMetrics> trials, Method method, std::size_t n);

}  // namespace fsv
