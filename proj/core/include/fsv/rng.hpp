#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace fsv {

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// A deterministic random stream identified by (seed, stream id).
///
/// The engine is xoshiro256** (period 2^256 - 1) whose state is expanded
/// from the identifying pair with SplitMix64. Streams are plain values:
/// copy one to replay it, never share one between threads.
///
/// Satisfies std::uniform_random_bit_generator.
class RngStream {
public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) noexcept;

  /// Unbiased integer on [0, bound). bound must be nonzero.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  /// One N(0,1) draw (Marsaglia polar method; spare value is cached).
  double normal() noexcept;

  friend bool operator==(const RngStream&, const RngStream&) = default;

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_normal_;
};

/// Stream for one (trial, purpose) pair under a base seed. Injective over
/// (trial_index, purpose_tag) for a fixed base seed.
RngStream derive_stream(std::uint64_t base_seed, std::uint32_t trial_index, std::uint32_t purpose_tag);

/// `count` i.i.d. N(0,1) draws taken from `stream`.
std::vector<double> standard_normal(RngStream& stream, std::size_t count);

/// What a derived stream is used for within one trial.
enum class Purpose : std::uint32_t {
  kData = 0,
  kSrs = 1,
  kFolds = 2,
  kFraction = 3,
};

/// Per-trial seed schedule: every trial t of a method lane gets its own
/// streams for data, sampling, folds and partition fraction, and each KFCV
/// repetition gets a fresh set. Lanes keep independent methods apart; two
/// methods on the same lane consume identical draws.
class SeedSchedule {
public:
  static constexpr std::uint32_t kPurposeCount = 4;
  static constexpr std::uint32_t kMaxRepetitions = 1u << 16;
  static constexpr std::uint32_t kMaxLanes =
      static_cast<std::uint32_t>((std::uint64_t{1} << 32) / (kPurposeCount * kMaxRepetitions));

  explicit SeedSchedule(std::uint64_t base_seed, std::uint32_t lane = 0);

  std::uint64_t base_seed() const noexcept { return base_seed_; }
  std::uint32_t lane() const noexcept { return lane_; }

  RngStream stream(std::uint32_t trial, Purpose purpose, std::uint32_t repetition = 0) const;

  SeedSchedule with_lane(std::uint32_t lane) const { return SeedSchedule(base_seed_, lane); }

private:
  std::uint64_t base_seed_;
  std::uint32_t lane_;
};

}  // namespace fsv
