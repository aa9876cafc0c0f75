#include "mmusic/baseline_omp.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mmusic/errors.hpp"

namespace mmusic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXcd to_vector(const std::vector<cplx>& values) {
  Eigen::VectorXcd v(static_cast<long long>(values.size()));
  for (long long i = 0; i < v.size(); ++i) v(i) = values[i];
  return v;
}

// Joint LS re-fit over the chosen atoms; amplitudes are rescaled by the
// sqrt(A) atom normalization so they read as per-pulse reflectivities.
Profile profile_from_atoms(const Dictionary& dict, const Eigen::VectorXcd& y,
                           const std::vector<int>& indices) {
  if (indices.empty()) return Profile{};
  const long long rows = dict.atoms.rows();
  Eigen::MatrixXcd selected(rows, static_cast<long long>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k)
    selected.col(static_cast<long long>(k)) = dict.atoms.col(indices[k]);
  const Eigen::VectorXcd coef = selected.colPivHouseholderQr().solve(y);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  std::vector<double> delays;
  std::vector<cplx> amplitudes;
  delays.reserve(indices.size());
  amplitudes.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    delays.push_back(dict.grid_delays_s[indices[k]]);
    amplitudes.push_back(coef(static_cast<long long>(k)) * scale);
  }
  return form_profile(delays, amplitudes);
}

}  // namespace

Dictionary build_dictionary(const RadarConfig& config,
                            const AvailabilityMask& mask, int grid_size) {
  validate(config);
  if (static_cast<int>(mask.size()) != config.pulse_count)
    throw InvalidInputError("mask length does not match pulse count");
  if (grid_size < 2) throw InvalidInputError("dictionary grid needs at least 2 delays");
  Dictionary dict;
  dict.pulse_indices = mask.valid_indices();
  const auto rows = static_cast<long long>(dict.pulse_indices.size());
  if (rows == 0) throw NoDataError("mask has no valid pulses");

  const double window = config.unambiguous_delay_s();
  dict.grid_delays_s.resize(grid_size);
  for (int g = 0; g < grid_size; ++g)
    dict.grid_delays_s[g] = window * static_cast<double>(g) / grid_size;

  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  dict.atoms.resize(rows, grid_size);
  for (long long i = 0; i < rows; ++i) {
    const double freq = config.pulse_frequency_hz(dict.pulse_indices[i]);
    for (int g = 0; g < grid_size; ++g) {
      const double phase = -kTwoPi * freq * dict.grid_delays_s[g];
      dict.atoms(i, g) = scale * cplx(std::cos(phase), std::sin(phase));
    }
  }
  return dict;
}

OmpResult omp(const std::vector<cplx>& observations, const Dictionary& dict,
              int max_atoms, double residual_tol) {
  if (max_atoms < 1) throw InvalidInputError("max_atoms must be at least 1");
  if (residual_tol < 0.0) throw InvalidInputError("residual tolerance must be nonnegative");
  if (static_cast<long long>(observations.size()) != dict.atoms.rows())
    throw InvalidInputError("observation count does not match dictionary rows");

  const Eigen::VectorXcd y = to_vector(observations);
  const double y_norm = y.norm();
  OmpResult result;
  result.residual_norms.push_back(y_norm);
  if (y_norm == 0.0) return result;

  const int grid = dict.grid_size();
  std::vector<char> used(grid, 0);
  Eigen::VectorXcd residual = y;
  const int limit = std::min(max_atoms, grid);
  while (static_cast<int>(result.atom_indices.size()) < limit) {
    int best = -1;
    double best_corr = 0.0;
    const Eigen::VectorXcd corr = dict.atoms.adjoint() * residual;
    for (int g = 0; g < grid; ++g) {
      if (used[g]) continue;
      const double c = std::abs(corr(g));
      if (c > best_corr) {
        best_corr = c;
        best = g;
      }
    }
    if (best < 0 || best_corr == 0.0) break;
    used[best] = 1;
    result.atom_indices.push_back(best);

    Eigen::MatrixXcd selected(dict.atoms.rows(),
                              static_cast<long long>(result.atom_indices.size()));
    for (std::size_t k = 0; k < result.atom_indices.size(); ++k)
      selected.col(static_cast<long long>(k)) =
          dict.atoms.col(result.atom_indices[k]);
    const Eigen::VectorXcd coef = selected.colPivHouseholderQr().solve(y);
    residual = y - selected * coef;
    result.residual_norms.push_back(residual.norm());
    if (residual.norm() <= residual_tol * y_norm) break;
  }
  result.profile = profile_from_atoms(dict, y, result.atom_indices);
  return result;
}

OmpResult run_omp_baseline(const RadarConfig& config, const MaskedSamples& data,
                           const OmpOptions& options) {
  validate(config);
  if (static_cast<int>(data.size()) != config.pulse_count)
    throw InvalidInputError("sample count does not match pulse count");
  const int grid = options.grid_size.value_or(options.grid_factor *
                                              config.pulse_count);
  const Dictionary dict = build_dictionary(config, data.mask, grid);

  std::vector<cplx> y;
  y.reserve(dict.pulse_indices.size());
  for (const int i : dict.pulse_indices) y.push_back(data.samples[i]);

  double tol = 0.05;
  if (options.residual_tol)
    tol = *options.residual_tol;
  else if (config.noise_snr_db)
    tol = std::pow(10.0, -*config.noise_snr_db / 20.0);

  if (options.max_atoms) return omp(y, dict, *options.max_atoms, tol);

  // No atom budget: explore up to a generous cap, then keep the prefix
  // minimizing AIC(k) = 2 A ln(E_k / A) + 4k over residual energies E_k
  // (two real parameters per atom). Greedy selection is prefix-stable, so
  // truncating the exploratory pass equals a budget-limited run.
  const auto valid = static_cast<long long>(dict.pulse_indices.size());
  const int cap = static_cast<int>(
      std::max<long long>(1, std::min<long long>(valid / 2, 64)));
  OmpResult exploratory = omp(y, dict, cap, 1e-15);
  const double initial_energy =
      exploratory.residual_norms[0] * exploratory.residual_norms[0];
  const double floor =
      1e-30 * initial_energy + std::numeric_limits<double>::denorm_min();
  int best_k = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < exploratory.residual_norms.size(); ++k) {
    const double energy = std::max(
        exploratory.residual_norms[k] * exploratory.residual_norms[k], floor);
    const double value =
        2.0 * static_cast<double>(valid) * std::log(energy / static_cast<double>(valid)) +
        4.0 * static_cast<double>(k);
    if (value < best_value) {
      best_value = value;
      best_k = static_cast<int>(k);
    }
  }
  OmpResult result;
  result.atom_indices.assign(exploratory.atom_indices.begin(),
                             exploratory.atom_indices.begin() + best_k);
  result.residual_norms.assign(exploratory.residual_norms.begin(),
                               exploratory.residual_norms.begin() + best_k + 1);
  result.profile = profile_from_atoms(dict, to_vector(y), result.atom_indices);
  return result;
}

}  // namespace mmusic
