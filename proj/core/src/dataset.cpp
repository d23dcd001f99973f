#include "fsv/dataset.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "fsv/error.hpp"

namespace fsv {

Dataset::Dataset(std::vector<double> values, double true_mean, double true_var, std::uint64_t seed)
    : values_(std::move(values)), true_mean_(true_mean), true_var_(true_var), seed_(seed) {
  detail::require(!values_.empty(), "Dataset: must hold at least one value");
  detail::require(true_var_ > 0.0, "Dataset: true variance must be positive");
}

Dataset generate_dataset(std::size_t n, double mu, double sigma2, RngStream& stream) {
  detail::require(n >= 1, "generate_dataset: n must be at least 1");
  detail::require(sigma2 > 0.0 && std::isfinite(sigma2), "generate_dataset: sigma2 must be positive");
  const std::uint64_t seed = stream.seed();
  std::vector<double> values = standard_normal(stream, n);
  const double sigma = std::sqrt(sigma2);
  for (auto& x : values) {
    x = mu + sigma * x;
  }
  return Dataset(std::move(values), mu, sigma2, seed);
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError(path.parent_path().string(), "cannot create directory: " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path.string(), "cannot open for writing");
  }
  out << "value\n";
  for (double x : data.values()) {
    out << fmt::format("{:.17g}\n", x);
  }
  if (!out) {
    throw IoError(path.string(), "write failed");
  }
}

}  // namespace fsv
