#pragma once

#include <span>

namespace fsv {

/// The fitted model: a mean predictor carrying the unbiased sample
/// variance of its training data.
struct ModelParams {
  double fitted_mean = 0.0;
  double fitted_var = 0.0;
};

/// Fits on `train` (at least two points).
ModelParams fit(std::span<const double> train);

/// Mean squared prediction error of `model` over `validation` (non-empty).
double loss(const ModelParams& model, std::span<const double> validation);

}  // namespace fsv
