#include "mmusic/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mmusic/errors.hpp"
#include "mmusic/rng.hpp"

namespace mmusic {

void validate(const RadarConfig& config) {
  if (config.pulse_count < 2)
    throw InvalidInputError("RadarConfig: pulse_count must be >= 2");
  if (!(config.frequency_step_hz > 0.0))
    throw InvalidInputError("RadarConfig: frequency_step_hz must be > 0");
  if (config.start_frequency_hz < 0.0)
    throw InvalidInputError("RadarConfig: start_frequency_hz must be >= 0");
}

int AvailabilityMask::valid_count() const {
  return static_cast<int>(std::count_if(flags.begin(), flags.end(),
                                        [](std::uint8_t f) { return f != 0; }));
}

std::vector<int> AvailabilityMask::valid_indices() const {
  std::vector<int> idx;
  idx.reserve(flags.size());
  for (int n = 0; n < size(); ++n)
    if (valid(n)) idx.push_back(n);
  return idx;
}

MaskedSamples synthesize(const RadarConfig& config, const ScattererSet& target,
                         std::uint64_t seed) {
  validate(config);
  if (target.empty())
    throw InvalidInputError("synthesize: target must contain >= 1 scatterer");
  const double window = config.unambiguous_delay_s();
  for (const Scatterer& s : target) {
    if (!(s.delay_s >= 0.0) || !(s.delay_s < window))
      throw InvalidInputError(
          "synthesize: scatterer delay outside the unambiguous window [0, 1/delta_f): " +
          std::to_string(s.delay_s) + " s");
  }

  const int n_pulses = config.pulse_count;
  MaskedSamples out;
  out.samples.assign(static_cast<std::size_t>(n_pulses), cplx{0.0, 0.0});
  out.mask.flags.assign(static_cast<std::size_t>(n_pulses), 1);

  for (int n = 0; n < n_pulses; ++n) {
    const double f_n = config.pulse_frequency_hz(n);
    cplx acc{0.0, 0.0};
    for (const Scatterer& s : target) {
      const double phase = -2.0 * M_PI * f_n * s.delay_s;
      acc += s.amplitude * cplx{std::cos(phase), std::sin(phase)};
    }
    out.samples[static_cast<std::size_t>(n)] = acc;
  }

  if (config.noise_snr_db.has_value()) {
    // SNR is per sample for a unit-amplitude scatterer: sigma^2 = 10^(-SNR/10).
    const double sigma2 = std::pow(10.0, -*config.noise_snr_db / 10.0);
    Rng rng(seed);
    for (int n = 0; n < n_pulses; ++n)
      out.samples[static_cast<std::size_t>(n)] += rng.complex_gaussian(sigma2);
  }
  return out;
}

AvailabilityMask make_random_mask(int pulse_count, int valid_count,
                                  std::uint64_t seed) {
  if (pulse_count < 1)
    throw InvalidInputError("make_random_mask: pulse_count must be >= 1");
  if (valid_count < 1 || valid_count > pulse_count)
    throw InvalidInputError(
        "make_random_mask: valid_count must be in [1, pulse_count]");

  // Partial Fisher-Yates: the first valid_count entries of idx end up as a
  // uniform sample without replacement.
  std::vector<int> idx(static_cast<std::size_t>(pulse_count));
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < valid_count; ++i) {
    const int j =
        i + static_cast<int>(rng.below(static_cast<std::uint64_t>(pulse_count - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }

  AvailabilityMask mask;
  mask.flags.assign(static_cast<std::size_t>(pulse_count), 0);
  for (int i = 0; i < valid_count; ++i)
    mask.flags[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 1;
  return mask;
}

AvailabilityMask make_block_mask(
    int pulse_count, const std::vector<std::pair<int, int>>& blocks) {
  if (pulse_count < 1)
    throw InvalidInputError("make_block_mask: pulse_count must be >= 1");
  AvailabilityMask mask;
  mask.flags.assign(static_cast<std::size_t>(pulse_count), 1);
  for (const auto& [start, end] : blocks) {
    if (start < 0 || end > pulse_count || start >= end)
      throw InvalidInputError("make_block_mask: interval [" +
                              std::to_string(start) + ", " + std::to_string(end) +
                              ") out of range");
    for (int n = start; n < end; ++n) {
      if (!mask.flags[static_cast<std::size_t>(n)])
        throw InvalidInputError("make_block_mask: overlapping intervals at index " +
                                std::to_string(n));
      mask.flags[static_cast<std::size_t>(n)] = 0;
    }
  }
  return mask;
}

MaskedSamples apply_mask(const MaskedSamples& data,
                         const AvailabilityMask& mask) {
  if (data.size() != mask.size())
    throw InvalidInputError("apply_mask: sample/mask length mismatch");
  MaskedSamples out = data;
  for (int n = 0; n < out.size(); ++n) {
    const bool keep = out.mask.valid(n) && mask.valid(n);
    out.mask.flags[static_cast<std::size_t>(n)] = keep ? 1 : 0;
    if (!keep) out.samples[static_cast<std::size_t>(n)] = cplx{0.0, 0.0};
  }
  return out;
}

}  // namespace mmusic
