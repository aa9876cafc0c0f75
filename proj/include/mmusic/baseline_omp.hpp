#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "mmusic/amplitude.hpp"
#include "mmusic/types.hpp"

namespace mmusic {

/// Over-complete grid dictionary: unit-norm steering atoms over the valid
/// pulses, one per delay on a uniform grid covering [0, 1/delta_f).
struct Dictionary {
  std::vector<double> grid_delays_s;
  Eigen::MatrixXcd atoms;          // A x G, unit-norm columns
  std::vector<int> pulse_indices;  // m_i, row order

  int grid_size() const { return static_cast<int>(grid_delays_s.size()); }
};

struct OmpOptions {
  std::optional<int> grid_size;          // default grid_factor * N
  int grid_factor = 4;
  std::optional<int> max_atoms;          // unset: AIC over residual energies
  std::optional<double> residual_tol;    // default 10^(-SNR/20), else 0.05
};

struct OmpResult {
  Profile profile;
  std::vector<int> atom_indices;  // selection order
  std::vector<double> residual_norms;
};

Dictionary build_dictionary(const RadarConfig& config,
                            const AvailabilityMask& mask, int grid_size);

/// Greedy pursuit: pick the atom maximizing |<atom, residual>|, jointly
/// re-fit amplitudes over the selected set, stop at max_atoms or when the
/// residual norm drops to residual_tol * ||Y||. Amplitudes in the returned
/// profile are rescaled from atom coefficients to per-pulse reflectivities.
OmpResult omp(const std::vector<cplx>& observations, const Dictionary& dict,
              int max_atoms, double residual_tol);

/// Dictionary construction plus stopping-rule defaults; when max_atoms is
/// unset the atom count is chosen by AIC on the residual-energy sequence.
OmpResult run_omp_baseline(const RadarConfig& config, const MaskedSamples& data,
                           const OmpOptions& options);

}  // namespace mmusic
