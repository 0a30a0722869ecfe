#pragma once

#include <cstdint>
#include <limits>

namespace pqdist {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Key of the independent stream for (seed, index).
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ mix64(index ^ 0x632BE59BD9B4E019ULL));
}

/// Counter-based generator: the k-th output is mix64(key + k·γ), so any
/// (seed, index) pair names a reproducible stream regardless of which thread
/// consumes it. Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t seed, std::uint64_t index = 0) : counter_(stream_key(seed, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return mix64(counter_);
  }

 private:
  std::uint64_t counter_;
};

}  // namespace pqdist
