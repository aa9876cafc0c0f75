#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mmusic/acf.hpp"
#include "mmusic/types.hpp"

namespace testutil {

inline mmusic::AvailabilityMask full_mask(int n) {
  mmusic::AvailabilityMask mask;
  mask.flags.assign(static_cast<std::size_t>(n), 1);
  return mask;
}

inline mmusic::AvailabilityMask alternating_mask(int n) {
  mmusic::AvailabilityMask mask;
  mask.flags.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mask.flags[static_cast<std::size_t>(i)] = i % 2 == 0;
  return mask;
}

// X_n = exp(-j 2 pi nu n): the single-tone fixture used across modules.
inline std::vector<mmusic::cplx> tone(int n, double nu) {
  std::vector<mmusic::cplx> samples(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double phase = -2.0 * std::numbers::pi * nu * i;
    samples[static_cast<std::size_t>(i)] = {std::cos(phase), std::sin(phase)};
  }
  return samples;
}

// ACF fixture from analytically known lag values (all lags marked defined).
inline mmusic::AcfEstimate analytic_acf(const std::vector<mmusic::cplx>& values,
                                        int pulse_count) {
  mmusic::AcfEstimate acf;
  acf.values = values;
  acf.pair_counts.assign(values.size(), 1);
  acf.pulse_count = pulse_count;
  return acf;
}

// True ACF of a sum of unit-amplitude tones: c(h) = sum_k exp(-j 2 pi nu_k h).
inline std::vector<mmusic::cplx> tone_acf(const std::vector<double>& nus,
                                          int max_lag) {
  std::vector<mmusic::cplx> values(static_cast<std::size_t>(max_lag) + 1);
  for (int h = 0; h <= max_lag; ++h) {
    mmusic::cplx sum = 0.0;
    for (const double nu : nus) {
      const double phase = -2.0 * std::numbers::pi * nu * h;
      sum += mmusic::cplx(std::cos(phase), std::sin(phase));
    }
    values[static_cast<std::size_t>(h)] = sum;
  }
  return values;
}

}  // namespace testutil
