#include "fsv/stattheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsv/error.hpp"

namespace fsv {

double srs_variance_component(double sigma2, std::size_t n, std::size_t N) {
  detail::require(sigma2 > 0.0, "srs_variance_component: sigma2 must be positive");
  detail::require(n >= 1 && n <= N, "srs_variance_component: need 1 <= n <= N");
  const auto nd = static_cast<double>(n);
  return (sigma2 / nd) * (1.0 - nd / static_cast<double>(N));
}

double kfcv_variance_component(std::span<const double> fold_variances) {
  detail::require(!fold_variances.empty(), "kfcv_variance_component: no fold variances");
  for (double v : fold_variances) {
    detail::require(v >= 0.0, "kfcv_variance_component: variances must be non-negative");
  }
  return std::accumulate(fold_variances.begin(), fold_variances.end(), 0.0) /
         static_cast<double>(fold_variances.size());
}

VarianceBudget hybrid_variance(double sigma2, std::size_t n, std::size_t N, std::span<const double> fold_variances,
                               std::size_t T) {
  detail::require(T >= 1, "hybrid_variance: T must be at least 1");
  VarianceBudget b;
  b.srs_component = srs_variance_component(sigma2, n, N);
  b.kfcv_component = kfcv_variance_component(fold_variances);
  b.T = T;
  b.total_per_T = (b.srs_component + b.kfcv_component) / static_cast<double>(T);
  return b;
}

double chebyshev_tail(double k_dev) {
  detail::require(k_dev > 0.0, "chebyshev_tail: k_dev must be positive");
  return std::min(1.0, 1.0 / (k_dev * k_dev));
}

double chebyshev_threshold(double sigma_hyb2, std::size_t T, double k_dev) {
  detail::require(sigma_hyb2 >= 0.0, "chebyshev_threshold: variance must be non-negative");
  detail::require(T >= 1, "chebyshev_threshold: T must be at least 1");
  detail::require(k_dev > 0.0, "chebyshev_threshold: k_dev must be positive");
  return k_dev * std::sqrt(sigma_hyb2 / static_cast<double>(T));
}

TailBound hoeffding_tail(double epsilon, std::size_t T, double a, double b) {
  detail::require(b > a, "hoeffding_tail: need b > a");
  detail::require(epsilon >= 0.0, "hoeffding_tail: epsilon must be non-negative");
  detail::require(T >= 1, "hoeffding_tail: T must be at least 1");
  const double width = b - a;
  TailBound out;
  out.raw = 2.0 * std::exp(-2.0 * static_cast<double>(T) * epsilon * epsilon / (width * width));
  out.capped = std::min(1.0, out.raw);
  return out;
}

}  // namespace fsv
