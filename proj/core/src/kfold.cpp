#include "fsv/kfold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsv/error.hpp"
#include "fsv/estimator.hpp"

namespace fsv {

FoldPlan make_folds(std::size_t sample_size, std::size_t k, RngStream& stream) {
  detail::require(k >= 2 && k <= sample_size, "make_folds: need 2 <= k <= sample_size");
  std::vector<std::size_t> order(sample_size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = sample_size; i > 1; --i) {
    const auto j = static_cast<std::size_t>(stream.uniform_below(i));
    std::swap(order[i - 1], order[j]);
  }

  FoldPlan plan;
  plan.sample_size = sample_size;
  plan.folds.resize(k);
  const std::size_t base = sample_size / k;
  const std::size_t extra = sample_size % k;
  auto it = order.begin();
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = base + (f < extra ? 1 : 0);
    plan.folds[f].assign(it, it + static_cast<std::ptrdiff_t>(len));
    it += static_cast<std::ptrdiff_t>(len);
  }
  return plan;
}

std::vector<FoldEvaluation> evaluate_folds(std::span<const double> sample, const FoldPlan& plan) {
  detail::require(plan.sample_size == sample.size(), "evaluate_folds: plan does not match sample size");
  detail::require(plan.k() >= 1, "evaluate_folds: plan has no folds");
  const std::size_t m = sample.size();
  for (const auto& fold : plan.folds) {
    detail::require(!fold.empty(), "evaluate_folds: empty fold");
    detail::require(m - fold.size() >= 2, "evaluate_folds: training complement needs at least two points");
  }

  // Sums are centred on the sample mean so complement statistics can be
  // recovered by subtraction without cancellation.
  const double centre = std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(m);
  double total_dev = 0.0;
  double total_ss = 0.0;
  for (double x : sample) {
    total_dev += x - centre;
    total_ss += (x - centre) * (x - centre);
  }

  std::vector<FoldEvaluation> out;
  out.reserve(plan.k());
  for (const auto& fold : plan.folds) {
    double fold_dev = 0.0;
    double fold_ss = 0.0;
    for (std::size_t i : fold) {
      detail::require(i < m, "evaluate_folds: fold index out of range");
      const double d = sample[i] - centre;
      fold_dev += d;
      fold_ss += d * d;
    }
    const auto fn = static_cast<double>(fold.size());
    const auto tn = static_cast<double>(m - fold.size());
    const double train_dev = total_dev - fold_dev;
    const double train_ss = total_ss - fold_ss;
    const double shift = train_dev / tn;  // train mean - centre

    FoldEvaluation e;
    e.train_mean = centre + shift;
    e.train_var = std::max(0.0, (train_ss - train_dev * shift) / (tn - 1.0));
    e.loss = std::max(0.0, (fold_ss - 2.0 * shift * fold_dev + fn * shift * shift) / fn);
    out.push_back(e);
  }
  return out;
}

std::vector<double> kfold_losses(std::span<const double> sample, const FoldPlan& plan) {
  const auto evals = evaluate_folds(sample, plan);
  std::vector<double> losses(evals.size());
  std::transform(evals.begin(), evals.end(), losses.begin(), [](const FoldEvaluation& e) { return e.loss; });
  return losses;
}

double empirical_kfold_loss(std::span<const double> losses) {
  detail::require(!losses.empty(), "empirical_kfold_loss: no fold losses");
  return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(losses.size());
}

LambdaWeights::LambdaWeights(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  detail::require(!lambdas_.empty(), "LambdaWeights: need at least one weight");
  for (double l : lambdas_) {
    detail::require(l >= 0.0 && std::isfinite(l), "LambdaWeights: weights must be non-negative and finite");
  }
}

LambdaWeights LambdaWeights::uniform(std::size_t k) { return LambdaWeights(std::vector<double>(k, 1.0)); }

bool LambdaWeights::sums_to_k(double tolerance) const noexcept {
  const double sum = std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0);
  return std::abs(sum - static_cast<double>(lambdas_.size())) <= tolerance;
}

double weighted_kfold_loss(std::span<const double> losses, const LambdaWeights& weights, WeightMode mode) {
  detail::require(!losses.empty(), "weighted_kfold_loss: no fold losses");
  detail::require(losses.size() == weights.size(), "weighted_kfold_loss: weight count does not match fold count");
  if (mode == WeightMode::kUnbiased) {
    detail::require(weights.sums_to_k(), "weighted_kfold_loss: unbiased mode requires sum(lambda) == k");
  }
  double acc = 0.0;
  const auto lambdas = weights.values();
  for (std::size_t i = 0; i < losses.size(); ++i) {
    acc += lambdas[i] * losses[i];
  }
  return acc / static_cast<double>(losses.size());
}

std::size_t minimum_sample_size(std::size_t k) { return 2 * k; }

DrawEvaluation evaluate_draw(const Dataset& data, std::size_t k, const SampleSizeRule& size_rule,
                             const SeedSchedule& schedule, std::uint32_t trial, std::uint32_t repetition) {
  detail::require(k >= 2, "evaluate_draw: k must be at least 2");
  detail::require(data.size() >= minimum_sample_size(k), "evaluate_draw: dataset too small for k folds");

  DrawEvaluation out;
  std::size_t m = 0;
  if (const auto* fixed = std::get_if<FixedSampleSize>(&size_rule)) {
    detail::require(fixed->m >= minimum_sample_size(k) && fixed->m <= data.size(),
                    "evaluate_draw: fixed sample size must lie in [2k, n]");
    m = fixed->m;
    out.fraction = static_cast<double>(m) / static_cast<double>(data.size());
  } else {
    auto fraction_stream = schedule.stream(trial, Purpose::kFraction, repetition);
    out.fraction = draw_partition_fraction(fraction_stream, std::get<FractionRange>(size_rule));
    m = sample_size_for_fraction(out.fraction, data.size(), minimum_sample_size(k));
  }

  auto srs_stream = schedule.stream(trial, Purpose::kSrs, repetition);
  out.sample = srs_sample(data, m, srs_stream);
  const std::vector<double> values = gather(data.values(), out.sample);
  const ModelParams whole = fit(values);
  out.sample_mean = whole.fitted_mean;
  out.sample_var = whole.fitted_var;

  auto fold_stream = schedule.stream(trial, Purpose::kFolds, repetition);
  const FoldPlan plan = make_folds(m, k, fold_stream);
  out.folds = evaluate_folds(values, plan);
  double sum = 0.0;
  for (const auto& f : out.folds) {
    sum += f.loss;
  }
  out.fold_average_loss = sum / static_cast<double>(out.folds.size());
  return out;
}

KfcvEstimate repeated_kfcv(const Dataset& data, const KfcvConfig& config, const SeedSchedule& schedule,
                           std::uint32_t trial) {
  detail::require(config.repetitions >= 1, "repeated_kfcv: repetitions must be at least 1");
  detail::require(config.weights.size() == config.k, "repeated_kfcv: need one lambda per fold");
  detail::require(config.repetitions <= SeedSchedule::kMaxRepetitions, "repeated_kfcv: too many repetitions");

  KfcvEstimate out;
  double mean_acc = 0.0;
  double var_acc = 0.0;
  double loss_acc = 0.0;
  std::vector<double> losses(config.k);
  for (std::size_t r = 0; r < config.repetitions; ++r) {
    const auto draw =
        evaluate_draw(data, config.k, config.size_rule, schedule, trial, static_cast<std::uint32_t>(r));
    for (std::size_t i = 0; i < config.k; ++i) {
      mean_acc += draw.folds[i].train_mean;
      var_acc += draw.folds[i].train_var;
      losses[i] = draw.folds[i].loss;
    }
    loss_acc += weighted_kfold_loss(losses, config.weights, config.weight_mode);
    if (r == 0) {
      out.first_fold_loss = draw.folds[0].loss;
    }
  }
  const auto evaluations = static_cast<double>(config.repetitions * config.k);
  out.mean_estimate = mean_acc / evaluations;
  out.var_estimate = var_acc / evaluations;
  out.loss = loss_acc / static_cast<double>(config.repetitions);
  return out;
}

}  // namespace fsv
