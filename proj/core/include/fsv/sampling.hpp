#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "fsv/dataset.hpp"
#include "fsv/rng.hpp"

namespace fsv {

/// Indices of a simple random sample S taken from a dataset of size
/// `source_n`. Indices are distinct; i is in S iff its inclusion indicator
/// is 1.
struct SampleView {
  std::vector<std::size_t> indices;
  std::size_t source_n = 0;

  std::size_t size() const noexcept { return indices.size(); }
};

/// Uniform m-subset of {0..n-1} without replacement (partial Fisher-Yates).
/// Each index is included with probability m/n.
SampleView srs_sample(std::size_t n, std::size_t m, RngStream& stream);
SampleView srs_sample(const Dataset& data, std::size_t m, RngStream& stream);

/// Values of `data` selected by `sample`, in sample order.
std::vector<double> gather(std::span<const double> values, const SampleView& sample);

struct InclusionMoments {
  double expected_count;
  double count_variance;
};

/// Mean and variance of |S| = sum of inclusion indicators: (m, m(1 - m/n)).
InclusionMoments inclusion_moments(std::size_t n, std::size_t m);

struct FractionRange {
  double lo = 0.60;
  double hi = 0.90;

  friend bool operator==(const FractionRange&, const FractionRange&) = default;
};

/// A working sample of exactly `m` points.
struct FixedSampleSize {
  std::size_t m = 0;
};

/// How large each drawn sample is: a random fraction of the dataset or a
/// fixed count.
using SampleSizeRule = std::variant<FractionRange, FixedSampleSize>;

/// Uniform draw on [range.lo, range.hi].
double draw_partition_fraction(RngStream& stream, FractionRange range = {});

/// Working sample size for a partition fraction: round(f * n), clamped to
/// [min(n, min_size), n].
std::size_t sample_size_for_fraction(double fraction, std::size_t n, std::size_t min_size = 1);

}  // namespace fsv
