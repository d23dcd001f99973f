#include "fsv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsv/error.hpp"

namespace fsv {

SampleView srs_sample(std::size_t n, std::size_t m, RngStream& stream) {
  detail::require(m >= 1 && m <= n, "srs_sample: sample size must satisfy 1 <= m <= n");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::size_t>(stream.uniform_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return SampleView{std::move(pool), n};
}

SampleView srs_sample(const Dataset& data, std::size_t m, RngStream& stream) {
  return srs_sample(data.size(), m, stream);
}

std::vector<double> gather(std::span<const double> values, const SampleView& sample) {
  detail::require(sample.source_n == values.size(), "gather: sample was drawn from a different dataset");
  std::vector<double> out;
  out.reserve(sample.size());
  for (std::size_t i : sample.indices) {
    out.push_back(values[i]);
  }
  return out;
}

InclusionMoments inclusion_moments(std::size_t n, std::size_t m) {
  detail::require(m >= 1 && m <= n, "inclusion_moments: sample size must satisfy 1 <= m <= n");
  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  return {md, md * (1.0 - md / nd)};
}

double draw_partition_fraction(RngStream& stream, FractionRange range) {
  return range.lo + (range.hi - range.lo) * stream.uniform01();
}

std::size_t sample_size_for_fraction(double fraction, std::size_t n, std::size_t min_size) {
  detail::require(n >= 1, "sample_size_for_fraction: n must be at least 1");
  detail::require(fraction > 0.0 && fraction <= 1.0, "sample_size_for_fraction: fraction must lie in (0, 1]");
  const auto rounded = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  return std::clamp(rounded, std::min(n, std::max<std::size_t>(min_size, 1)), n);
}

}  // namespace fsv
