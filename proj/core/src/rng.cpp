#include "fsv/rng.hpp"

#include <cmath>

#include "fsv/error.hpp"

namespace fsv {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {
  // mix64 is a bijection, so distinct stream ids give distinct SplitMix
  // starting points under one seed.
  std::uint64_t sm = mix64(seed) ^ mix64(stream_id + kGolden);
  for (auto& word : state_) {
    sm += kGolden;
    word = mix64(sm);
  }
}

RngStream::result_type RngStream::operator()() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

std::uint64_t RngStream::uniform_below(std::uint64_t bound) noexcept {
  // Lemire's multiply-and-reject.
  std::uint64_t x = (*this)();
  __uint128_t product = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = (*this)();
      product = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double RngStream::normal() noexcept {
  if (spare_normal_) {
    const double value = *spare_normal_;
    spare_normal_.reset();
    return value;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  return u * factor;
}

RngStream derive_stream(std::uint64_t base_seed, std::uint32_t trial_index, std::uint32_t purpose_tag) {
  const std::uint64_t stream_id = (static_cast<std::uint64_t>(trial_index) << 32) | purpose_tag;
  return RngStream(base_seed, stream_id);
}

std::vector<double> standard_normal(RngStream& stream, std::size_t count) {
  std::vector<double> out(count);
  for (auto& x : out) {
    x = stream.normal();
  }
  return out;
}

SeedSchedule::SeedSchedule(std::uint64_t base_seed, std::uint32_t lane) : base_seed_(base_seed), lane_(lane) {
  detail::require(lane < kMaxLanes, "SeedSchedule: lane out of range");
}

RngStream SeedSchedule::stream(std::uint32_t trial, Purpose purpose, std::uint32_t repetition) const {
  detail::require(repetition < kMaxRepetitions, "SeedSchedule: repetition index out of range");
  const std::uint32_t tag =
      (lane_ * kMaxRepetitions + repetition) * kPurposeCount + static_cast<std::uint32_t>(purpose);
  return derive_stream(base_seed_, trial, tag);
}

}  // namespace fsv
