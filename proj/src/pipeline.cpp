#include "mmusic/pipeline.hpp"

#include <algorithm>

#include "mmusic/covariance.hpp"
#include "mmusic/errors.hpp"

namespace mmusic {

MusicEstimate estimate_mmusic(const RadarConfig& config,
                              const MaskedSamples& data,
                              const MusicOptions& options) {
  validate(config);
  if (static_cast<int>(data.size()) != config.pulse_count)
    throw InvalidInputError("sample count does not match pulse count");
  const int n = config.pulse_count;
  const auto valid = static_cast<long long>(data.mask.valid_count());
  if (valid == 0) throw NoDataError("mask has no valid pulses");

  int cap = options.max_matrix_size.value_or(std::min(n / 4, 128));
  if (options.max_matrix_size && *options.max_matrix_size < 2)
    throw InvalidInputError("max_matrix_size must be at least 2");
  cap = std::min(std::max(cap, 2), n);  // lags above N-1 cannot exist

  MusicEstimate estimate;
  estimate.acf = estimate_acf(data, cap - 1);
  estimate.matrix_size = select_matrix_size(estimate.acf, cap);
  if (estimate.matrix_size < 2) {
    const int fallback = largest_defined_size(estimate.acf, cap);
    if (fallback < 2)
      throw InsufficientDataError(
          "too few lag pairs to form a 2x2 covariance matrix");
    estimate.matrix_size = fallback;
    estimate.size_rule_fallback = true;
  }

  const CovarianceMatrix cov = form_toeplitz(estimate.acf, estimate.matrix_size,
                                             options.diagonal_loading);
  SubspaceSplit split = eigendecompose(cov);
  estimate.eigenvalues = split.eigenvalues;

  long long n_e = valid;
  if (options.effective_samples) {
    if (*options.effective_samples < estimate.matrix_size)
      throw InvalidInputError("effective_samples below covariance size");
    n_e = *options.effective_samples;
  }
  n_e = std::max<long long>(n_e, estimate.matrix_size);

  if (options.selector == OrderSelector::kAic) {
    estimate.signal_dim = estimate_order_aic(split.eigenvalues, n_e);
  } else {
    if (!(options.threshold_ratio > 0.0))
      throw InvalidInputError("threshold ratio must be positive");
    const double top = split.eigenvalues(0);
    estimate.signal_dim =
        estimate_order_threshold(split.eigenvalues, options.threshold_ratio * top);
  }
  if (estimate.signal_dim == 0)
    throw NoSignalError("order selection found no signal eigenvalues");
  split.signal_dim = estimate.signal_dim;

  estimate.roots = root_music(split);
  estimate.roots.delays =
      roots_to_delays(estimate.roots.selected, config.frequency_step_hz);

  const SteeringMatrix steering =
      build_steering(config, data.mask, estimate.roots.delays);
  std::vector<cplx> observations;
  observations.reserve(steering.pulse_indices.size());
  for (const int i : steering.pulse_indices)
    observations.push_back(data.samples[i]);
  estimate.amplitudes = least_squares_amplitudes(steering, observations);
  estimate.profile = form_profile(estimate.roots.delays, estimate.amplitudes);
  return estimate;
}

}  // namespace mmusic
