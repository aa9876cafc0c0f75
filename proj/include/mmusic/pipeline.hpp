#pragma once

#include <optional>
#include <vector>

#include "mmusic/acf.hpp"
#include "mmusic/amplitude.hpp"
#include "mmusic/subspace.hpp"
#include "mmusic/types.hpp"

namespace mmusic {

enum class OrderSelector { kAic, kThreshold };

struct MusicOptions {
  OrderSelector selector = OrderSelector::kAic;
  double threshold_ratio = 0.01;  // T = ratio * lambda_1 in threshold mode
  std::optional<long long> effective_samples;
  std::optional<int> max_matrix_size;  // default min(N/4, 128)
  double diagonal_loading = 0.0;
};

struct MusicEstimate {
  AcfEstimate acf;
  int matrix_size = 0;
  bool size_rule_fallback = false;  // pair-count rule gave L < 2
  Eigen::VectorXd eigenvalues;
  int signal_dim = 0;
  RootSet roots;
  std::vector<cplx> amplitudes;  // aligned with roots.delays
  Profile profile;
};

/// Full gap-tolerant estimation chain: lag-averaged ACF over the available
/// pulses, Toeplitz covariance at the pair-count-selected size, eigensplit,
/// order selection, Root-MUSIC delays, least-squares amplitudes, profile.
MusicEstimate estimate_mmusic(const RadarConfig& config,
                              const MaskedSamples& data,
                              const MusicOptions& options = {});

}  // namespace mmusic
