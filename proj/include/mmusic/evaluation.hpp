#pragma once

#include <optional>
#include <vector>

#include "mmusic/amplitude.hpp"

namespace mmusic {

struct Match {
  int truth_index = -1;
  int estimate_index = -1;
  double range_error_m = 0.0;
};

/// Outcome of gating estimated scatterers against ground truth. RMSE and
/// amplitude error are absent when no pairs matched.
struct MatchReport {
  std::vector<Match> matches;
  std::vector<int> missed;    // truth indices, ascending
  std::vector<int> spurious;  // estimate indices, ascending
  std::optional<double> range_rmse_m;
  std::optional<double> amplitude_rms_relative_error;
  bool order_correct = false;
};

/// Greedy nearest-range matching: candidate pairs within the gate are taken
/// smallest error first, each index used at most once. Amplitude error is
/// the RMS relative magnitude error over matched pairs.
MatchReport match_scatterers(const Profile& truth, const Profile& estimate,
                             double gate_m);

/// Number of profile points with magnitude within floor_db_below_peak dB of
/// the maximum. Callers subtract the expected scatterer count.
int spurious_peak_count(const Profile& profile, double floor_db_below_peak);

}  // namespace mmusic
