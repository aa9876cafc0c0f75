#include "mmusic/acf.hpp"

#include <string>

#include "mmusic/errors.hpp"

namespace mmusic {

long long count_pairs(const AvailabilityMask& mask, int lag) {
  if (lag < 0 || lag >= mask.size())
    throw InvalidInputError("count_pairs: lag " + std::to_string(lag) +
                            " outside [0, N)");
  long long count = 0;
  for (int i = 0; i + lag < mask.size(); ++i)
    if (mask.valid(i) && mask.valid(i + lag)) ++count;
  return count;
}

AcfEstimate estimate_acf(const MaskedSamples& data, int max_lag) {
  const int n = data.size();
  if (max_lag < 0 || max_lag >= n)
    throw InvalidInputError("estimate_acf: max_lag " + std::to_string(max_lag) +
                            " outside [0, N)");

  AcfEstimate acf;
  acf.pulse_count = n;
  acf.values.assign(static_cast<std::size_t>(max_lag) + 1, cplx{0.0, 0.0});
  acf.pair_counts.assign(static_cast<std::size_t>(max_lag) + 1, 0);

  const auto& x = data.samples;
  const auto& mask = data.mask;

  // Lag 0 accumulates |X_i|^2 as a real sum so c_hat(0) is exactly real.
  {
    double sum = 0.0;
    long long q = 0;
    for (int i = 0; i < n; ++i) {
      if (!mask.valid(i)) continue;
      sum += std::norm(x[static_cast<std::size_t>(i)]);
      ++q;
    }
    acf.pair_counts[0] = q;
    if (q > 0) acf.values[0] = cplx{sum / static_cast<double>(q), 0.0};
  }

  for (int h = 1; h <= max_lag; ++h) {
    cplx sum{0.0, 0.0};
    long long q = 0;
    for (int i = 0; i + h < n; ++i) {
      if (!mask.valid(i) || !mask.valid(i + h)) continue;
      sum += x[static_cast<std::size_t>(i + h)] *
             std::conj(x[static_cast<std::size_t>(i)]);
      ++q;
    }
    acf.pair_counts[static_cast<std::size_t>(h)] = q;
    if (q > 0)
      acf.values[static_cast<std::size_t>(h)] = sum / static_cast<double>(q);
  }
  return acf;
}

}  // namespace mmusic
