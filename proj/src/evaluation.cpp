#include "mmusic/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "mmusic/errors.hpp"

namespace mmusic {

MatchReport match_scatterers(const Profile& truth, const Profile& estimate,
                             double gate_m) {
  if (!(gate_m > 0.0)) throw InvalidInputError("matching gate must be positive");
  const int n_truth = static_cast<int>(truth.points.size());
  const int n_est = static_cast<int>(estimate.points.size());

  struct Candidate {
    double error;
    double truth_range;
    double est_range;
    int truth_index;
    int estimate_index;
  };
  std::vector<Candidate> candidates;
  for (int t = 0; t < n_truth; ++t) {
    for (int e = 0; e < n_est; ++e) {
      const double err =
          std::abs(truth.points[t].range_m - estimate.points[e].range_m);
      if (err <= gate_m)
        candidates.push_back(
            {err, truth.points[t].range_m, estimate.points[e].range_m, t, e});
    }
  }
  // Range-based tie-breaks keep the match set independent of point order.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.error, a.truth_range, a.est_range,
                              a.truth_index, a.estimate_index) <
                     std::tie(b.error, b.truth_range, b.est_range,
                              b.truth_index, b.estimate_index);
            });

  MatchReport report;
  std::vector<char> truth_used(n_truth, 0);
  std::vector<char> est_used(n_est, 0);
  for (const Candidate& c : candidates) {
    if (truth_used[c.truth_index] || est_used[c.estimate_index]) continue;
    truth_used[c.truth_index] = 1;
    est_used[c.estimate_index] = 1;
    report.matches.push_back({c.truth_index, c.estimate_index, c.error});
  }
  for (int t = 0; t < n_truth; ++t)
    if (!truth_used[t]) report.missed.push_back(t);
  for (int e = 0; e < n_est; ++e)
    if (!est_used[e]) report.spurious.push_back(e);

  if (!report.matches.empty()) {
    double sq_sum = 0.0;
    for (const Match& m : report.matches)
      sq_sum += m.range_error_m * m.range_error_m;
    report.range_rmse_m =
        std::sqrt(sq_sum / static_cast<double>(report.matches.size()));

    double amp_sq_sum = 0.0;
    int amp_count = 0;
    for (const Match& m : report.matches) {
      const double true_mag = std::abs(truth.points[m.truth_index].amplitude);
      if (true_mag == 0.0) continue;
      const double est_mag =
          std::abs(estimate.points[m.estimate_index].amplitude);
      const double rel = (est_mag - true_mag) / true_mag;
      amp_sq_sum += rel * rel;
      ++amp_count;
    }
    if (amp_count > 0)
      report.amplitude_rms_relative_error =
          std::sqrt(amp_sq_sum / static_cast<double>(amp_count));
  }
  report.order_correct =
      n_truth == n_est && report.missed.empty() && report.spurious.empty();
  return report;
}

int spurious_peak_count(const Profile& profile, double floor_db_below_peak) {
  if (floor_db_below_peak < 0.0)
    throw InvalidInputError("dB floor must be nonnegative");
  if (profile.points.empty()) return 0;
  double peak_db = profile.points[0].magnitude_db;
  for (const ProfilePoint& p : profile.points)
    peak_db = std::max(peak_db, p.magnitude_db);
  int count = 0;
  for (const ProfilePoint& p : profile.points)
    if (p.magnitude_db >= peak_db - floor_db_below_peak) ++count;
  return count;
}

}  // namespace mmusic
