#pragma once

#include <cstdint>

#include "qsmooth/special_functions.hpp"

namespace qsmooth {

namespace detail {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace detail

/// Counter-based uniform stream: output i is a pure function of (seed, i),
/// so streams are reproducible across platforms and thread counts.
/// Normal variates come from the inverse CDF applied to the uniforms.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : key_(seed) {}

  std::uint64_t next_u64() {
    counter_ += detail::kGolden;
    return detail::mix64(key_ + counter_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return inv_norm_cdf(uniform()); }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Deterministic per-replication seed: hash of (master seed, stream index).
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return detail::mix64(master ^ detail::mix64(index + detail::kGolden));
}

}  // namespace qsmooth
