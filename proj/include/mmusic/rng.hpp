#pragma once

#include <cstdint>
#include <random>

#include "mmusic/types.hpp"

namespace mmusic {

/// Deterministic random source. All draws are defined directly on the
/// mt19937_64 output stream so that results are bit-identical across
/// platforms and standard-library implementations (std::distributions
/// make no such guarantee).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), unbiased (rejection sampling). n >= 1.
  std::uint64_t below(std::uint64_t n);

  /// Circular complex Gaussian with E|z|^2 = variance, variance split
  /// evenly across the real and imaginary parts.
  cplx complex_gaussian(double variance);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mmusic
