#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mmusic/types.hpp"

namespace mmusic {

/// Synthesizes X_n = sum_k alpha_k * exp(-j 2 pi f_n tau_k) + e_n for
/// n = 0..N-1, with e_n circular complex Gaussian noise at the configured
/// SNR relative to a unit-amplitude scatterer (omitted when the config is
/// noiseless). The returned mask is all-true; apply_mask() introduces gaps.
/// Identical (config, target, seed) inputs give bit-identical output.
MaskedSamples synthesize(const RadarConfig& config, const ScattererSet& target,
                         std::uint64_t seed);

/// Mask with exactly valid_count true flags at positions drawn by seeded
/// uniform sampling without replacement.
AvailabilityMask make_random_mask(int pulse_count, int valid_count,
                                  std::uint64_t seed);

/// Mask that is false exactly inside the union of [start, end) intervals.
AvailabilityMask make_block_mask(
    int pulse_count, const std::vector<std::pair<int, int>>& blocks);

/// Combines masks by logical AND and zeroes the masked-out sample entries
/// (defense in depth: correctness never relies on those values).
MaskedSamples apply_mask(const MaskedSamples& data,
                         const AvailabilityMask& mask);

}  // namespace mmusic
