#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mmusic/types.hpp"

namespace mmusic {

/// A x K steering matrix over the valid pulses: entry(i,k) = exp(-j 2 pi
/// f_{m_i} tau_k) with m_i the i-th valid pulse index. Every entry has unit
/// modulus.
struct SteeringMatrix {
  Eigen::MatrixXcd entries;
  std::vector<int> pulse_indices;  // m_i, row order
  std::vector<double> delays_s;    // tau_k, column order

  long long rows() const { return entries.rows(); }
  long long cols() const { return entries.cols(); }
};

struct ProfilePoint {
  double range_m = 0.0;
  cplx amplitude;
  double magnitude_db = 0.0;
};

/// Scatterer list sorted ascending by range. magnitude_db floors at -300 dB
/// so zero amplitudes stay finite.
struct Profile {
  std::vector<ProfilePoint> points;
};

SteeringMatrix build_steering(const RadarConfig& config,
                              const AvailabilityMask& mask,
                              const std::vector<double>& delays_s);

/// alpha = (F^H F)^{-1} F^H Y via column-pivoted QR. Near-duplicate delays
/// make F^H F ill-conditioned; a condition estimate above 1e12 raises
/// ConditioningError naming the closest delay pair.
std::vector<cplx> least_squares_amplitudes(const SteeringMatrix& steering,
                                           const std::vector<cplx>& observations);

Profile form_profile(const std::vector<double>& delays_s,
                     const std::vector<cplx>& amplitudes);

}  // namespace mmusic
