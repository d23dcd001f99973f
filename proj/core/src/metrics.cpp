#include "fsv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fsv/error.hpp"

namespace fsv {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::kSrs:
      return "SRS";
    case Method::kKfcv:
      return "KF";
    case Method::kFsv:
      return "FSV";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) {
      return m;
    }
  }
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

std::string_view metric_key(Metric m) noexcept {
  switch (m) {
    case Metric::kMeanEst:
      return "mean_est";
    case Metric::kVarEst:
      return "var_est";
    case Metric::kMse:
      return "mse";
    case Metric::kBias:
      return "bias";
    case Metric::kRocMean:
      return "roc_me";
    case Metric::kRocVar:
      return "roc_ve";
  }
  return "?";
}

std::string_view metric_label(Metric m) noexcept {
  switch (m) {
    case Metric::kMeanEst:
      return "Mean est.";
    case Metric::kVarEst:
      return "Var est.";
    case Metric::kMse:
      return "MSE";
    case Metric::kBias:
      return "Bias";
    case Metric::kRocMean:
      return "ROC Mean est.";
    case Metric::kRocVar:
      return "ROC Var est.";
  }
  return "?";
}

Metric parse_metric(std::string_view key) {
  for (Metric m : kAllMetrics) {
    if (metric_key(m) == key) {
      return m;
    }
  }
  throw ValidationError("unknown metric '" + std::string(key) + "'");
}

double TrialMetrics::get(Metric m) const noexcept {
  switch (m) {
    case Metric::kMeanEst:
      return mean_est;
    case Metric::kVarEst:
      return var_est;
    case Metric::kMse:
      return mse;
    case Metric::kBias:
      return bias;
    case Metric::kRocMean:
      return roc_me;
    case Metric::kRocVar:
      return roc_ve;
  }
  return 0.0;
}

void TrialMetrics::set(Metric m, double value) noexcept {
  switch (m) {
    case Metric::kMeanEst:
      mean_est = value;
      break;
    case Metric::kVarEst:
      var_est = value;
      break;
    case Metric::kMse:
      mse = value;
      break;
    case Metric::kBias:
      bias = value;
      break;
    case Metric::kRocMean:
      roc_me = value;
      break;
    case Metric::kRocVar:
      roc_ve = value;
      break;
  }
}

TrialMetrics trial_metrics(double mean_est, double var_est, double mse, double true_mean, double true_var,
                           double fold_loss_for_bias) {
  detail::require(true_var > 0.0, "trial_metrics: true variance must be positive");
  TrialMetrics t;
  t.mean_est = mean_est;
  t.var_est = var_est;
  t.mse = mse;
  t.bias = std::abs(fold_loss_for_bias - true_var);
  t.roc_me = std::abs(mean_est - true_mean);
  t.roc_ve = std::abs(var_est - true_var);
  return t;
}

TrialMetrics scaled(const TrialMetrics& m, double factor) noexcept {
  TrialMetrics out;
  for (Metric metric : kAllMetrics) {
    out.set(metric, factor * m.get(metric));
  }
  return out;
}

MethodSummary summarize(std::span<const TrialMetrics> trials, Method method, std::size_t n) {
  detail::require(!trials.empty(), "summarize: no trials");
  MethodSummary s;
  s.method = method;
  s.n = n;
  s.trials = trials.size();
  std::vector<double> values(trials.size());
  for (Metric metric : kAllMetrics) {
    std::transform(trials.begin(), trials.end(), values.begin(),
                   [metric](const TrialMetrics& t) { return t.get(metric); });
    // Summing in sorted order makes the result independent of trial order.
    std::sort(values.begin(), values.end());
    auto& stat = s.stats[static_cast<std::size_t>(metric)];
    stat.min = values.front();
    stat.max = values.back();
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    stat.mean = std::clamp(sum / static_cast<double>(values.size()), stat.min, stat.max);
  }
  return s;
}

}  // namespace fsv
