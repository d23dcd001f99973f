#pragma once

#include <cstddef>
#include <span>

namespace fsv {

/// Variance budget of the compounded FSV measure:
/// total_per_T = (srs_component + kfcv_component) / T.
struct VarianceBudget {
  double srs_component = 0.0;
  double kfcv_component = 0.0;
  double total_per_T = 0.0;
  std::size_t T = 1;
};

/// Sampling variance with finite-population correction: (sigma2/n)(1 - n/N).
/// Requires sigma2 > 0 and 1 <= n <= N.
double srs_variance_component(double sigma2, std::size_t n, std::size_t N);

/// Mean of the per-fold loss variances.
double kfcv_variance_component(std::span<const double> fold_variances);

VarianceBudget hybrid_variance(double sigma2, std::size_t n, std::size_t N, std::span<const double> fold_variances,
                               std::size_t T);

/// Chebyshev: P(|X - EX| >= k_dev * sd) <= 1/k_dev^2, capped at 1.
double chebyshev_tail(double k_dev);

/// Deviation k_dev * sqrt(sigma_hyb2 / T) that the tail above refers to.
double chebyshev_threshold(double sigma_hyb2, std::size_t T, double k_dev);

struct TailBound {
  double raw = 0.0;     ///< formula value, may exceed 1
  double capped = 0.0;  ///< min(1, raw)
};

/// Hoeffding for the mean of T values in [a, b]:
/// P(|mean - E| > eps) <= 2 exp(-2 T eps^2 / (b - a)^2).
TailBound hoeffding_tail(double epsilon, std::size_t T, double a, double b);

}  // namespace fsv
