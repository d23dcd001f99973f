#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fsv/rng.hpp"

namespace fsv {

/// Immutable univariate sample drawn from N(mu, sigma2) plus the parameters and seed it came from.
///
/// `true_mean` and `true_var` are the generating population parameters,
/// not statistics of `values()`.
class Dataset {
public:
  Dataset(std::vector<double> values, double true_mean, double true_var, std::uint64_t seed);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double true_mean() const noexcept { return true_mean_; }
  double true_var() const noexcept { return true_var_; }
  std::uint64_t seed() const noexcept { return seed_; }

private:
  std::vector<double> values_;
  double true_mean_;
  double true_var_;
  std::uint64_t seed_;
};

/// n draws of mu + sqrt(sigma2) * Z, Z ~ N(0,1) taken from `stream`.
/// Throws ValidationError when n == 0 or sigma2 <= 0.
Dataset generate_dataset(std::size_t n, double mu, double sigma2, RngStream& stream);

/// One-column CSV with header `value`; missing parent directories are created.
void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace fsv
