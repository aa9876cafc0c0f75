#include "mmusic/rng.hpp"

#include <cmath>

#include "mmusic/errors.hpp"

namespace mmusic {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidInputError("Rng::below requires n >= 1");
  // Rejection sampling over the largest multiple of n representable in
  // 64 bits keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

cplx Rng::complex_gaussian(double variance) {
  // Polar form: |z|^2 is exponential with mean `variance`, the phase is
  // uniform. (1 - u) keeps the logarithm's argument in (0, 1].
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-variance * std::log1p(-u1));
  const double phase = 2.0 * M_PI * u2;
  return {radius * std::cos(phase), radius * std::sin(phase)};
}

}  // namespace mmusic
