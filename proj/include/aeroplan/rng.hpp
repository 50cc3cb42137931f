#pragma once

#include <cmath>
#include <cstdint>

namespace aeroplan {

// Deterministic 64-bit generator used for every stochastic draw in the
// library: SplitMix64 (Steele/Lea/Flood). The state advances by the
// constant 0x9E3779B97F4A7C15 and the output is the mix64 finalizer
// below. No global generator state exists anywhere; callers pass a
// generator value explicitly.

// SplitMix64 output finalizer. Also used as the substream seed hash.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for Monte-Carlo run i derived from the user seed:
//   mix64(seed XOR 0x9E3779B97F4A7C15 * (i + 1))
// Runs are independent substreams, reproducible for any (seed, i).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller: z = sqrt(-2 ln u1) * cos(2 pi u2)
  // with u1 in (0, 1]. The sine companion is discarded, so every normal
  // consumes exactly two generator steps and the stream layout is fixed.
  double next_normal() {
    const double u1 = 1.0 - next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace aeroplan
