#pragma once

#include <vector>

#include "mmusic/types.hpp"

namespace mmusic {

/// Autocovariance estimate over lags h = 0..max_lag. values[h] is
/// meaningful only where pair_counts[h] > 0; undefined lags are tagged by
/// a zero pair count, never silently zero-valued.
struct AcfEstimate {
  std::vector<cplx> values;            // c_hat(h)
  std::vector<long long> pair_counts;  // Q(h)
  int pulse_count = 0;                 // N of the originating record

  int max_lag() const { return static_cast<int>(values.size()) - 1; }
  bool defined(int lag) const {
    return pair_counts[static_cast<std::size_t>(lag)] > 0;
  }
};

/// Q(lag) = sum_i I(i) * I(i + lag): the number of usable sample couples.
long long count_pairs(const AvailabilityMask& mask, int lag);

/// Gap-aware autocovariance: for each lag h with Q(h) > 0,
///   c_hat(h) = (1 / Q(h)) * sum_i I(i) I(i+h) X_{i+h} conj(X_i).
/// With a full mask this is the unbiased lag-averaged estimator. c_hat(0)
/// is exactly real by construction.
AcfEstimate estimate_acf(const MaskedSamples& data, int max_lag);

}  // namespace mmusic
