#include "fsv/estimator.hpp"

#include <numeric>

#include "fsv/error.hpp"

namespace fsv {

ModelParams fit(std::span<const double> train) {
  detail::require(train.size() >= 2, "fit: need at least two training points");
  const auto n = static_cast<double>(train.size());
  const double mean = std::accumulate(train.begin(), train.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : train) {
    ss += (x - mean) * (x - mean);
  }
  return {mean, ss / (n - 1.0)};
}

double loss(const ModelParams& model, std::span<const double> validation) {
  detail::require(!validation.empty(), "loss: validation set is empty");
  double ss = 0.0;
  for (double v : validation) {
    const double r = v - model.fitted_mean;
    ss += r * r;
  }
  return ss / static_cast<double>(validation.size());
}

}  // namespace fsv
