#include "fsv/fusion.hpp"

#include <fmt/format.h>

#include "fsv/error.hpp"
#include "fsv/kfold.hpp"
#include "fsv/parallel.hpp"

namespace fsv {

void FsvConfig::validate() const {
  detail::require(alpha > 0.0 && alpha <= 1.0, "FsvConfig: alpha must lie in (0, 1]");
  detail::require(iterations >= 1, "FsvConfig: need at least one iteration");
  detail::require(k >= 2, "FsvConfig: k must be at least 2");
  if (const auto* range = std::get_if<FractionRange>(&size_rule)) {
    detail::require(range->lo > 0.0 && range->lo <= range->hi && range->hi <= 1.0,
                    "FsvConfig: fraction range must satisfy 0 < lo <= hi <= 1");
  }
}

std::vector<std::string> FsvConfig::warnings() const {
  std::vector<std::string> out;
  if (alpha < 0.8 || alpha > 1.0) {
    out.push_back(fmt::format("alpha = {} lies outside the usual range [0.8, 1.0]", alpha));
  }
  return out;
}

TrialMetrics draw_metrics(const DrawEvaluation& draw, const Dataset& data) {
  detail::require(!draw.folds.empty(), "draw_metrics: draw has no folds");
  return trial_metrics(draw.sample_mean, draw.sample_var, draw.fold_average_loss, data.true_mean(),
                       data.true_var(), draw.folds.front().loss);
}

double compound_measure(std::span<const double> per_iteration, double alpha) {
  detail::require(!per_iteration.empty(), "compound_measure: no iterations");
  detail::require(alpha > 0.0, "compound_measure: alpha must be positive");
  double acc = 0.0;
  for (double l : per_iteration) {
    acc += alpha * l;
  }
  return acc / static_cast<double>(per_iteration.size());
}

FsvResult fsv_run(const Dataset& data, const FsvConfig& config, const SeedSchedule& schedule, std::size_t jobs) {
  // Non-owning handle; the provider never outlives this call.
  std::shared_ptr<const Dataset> shared(&data, [](const Dataset*) {});
  return fsv_run([&shared](std::uint32_t) { return shared; }, config, schedule, jobs);
}

FsvResult fsv_run(const DatasetProvider& provider, const FsvConfig& config, const SeedSchedule& schedule,
                  std::size_t jobs) {
  config.validate();
  detail::require(config.iterations <= 0xffffffffULL, "fsv_run: too many iterations");

  FsvResult result;
  result.alpha = config.alpha;
  result.per_iteration_loss.resize(config.iterations);
  result.per_iteration_stats.resize(config.iterations);

  parallel_for(config.iterations, jobs, [&](std::size_t t) {
    const auto iteration = static_cast<std::uint32_t>(t);
    const auto data = provider(iteration);
    detail::require(data != nullptr, "fsv_run: provider returned no dataset");
    detail::require(data->size() >= 2 * config.k, "fsv_run: dataset needs at least 2k points");
    const DrawEvaluation draw = evaluate_draw(*data, config.k, config.size_rule, schedule, iteration);
    result.per_iteration_loss[t] = draw.fold_average_loss;
    result.per_iteration_stats[t] = scaled(draw_metrics(draw, *data), config.alpha);
  });

  result.compounded = compound_measure(result.per_iteration_loss, config.alpha);
  result.raw_mean = compound_measure(result.per_iteration_loss, 1.0);
  return result;
}

}  // namespace fsv
