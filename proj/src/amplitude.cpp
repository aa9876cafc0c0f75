#include "mmusic/amplitude.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mmusic/errors.hpp"

namespace mmusic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDbFloor = -300.0;
}  // namespace

SteeringMatrix build_steering(const RadarConfig& config,
                              const AvailabilityMask& mask,
                              const std::vector<double>& delays_s) {
  validate(config);
  if (delays_s.empty()) throw InvalidInputError("no delays for steering matrix");
  if (static_cast<int>(mask.size()) != config.pulse_count)
    throw InvalidInputError("mask length does not match pulse count");
  SteeringMatrix steering;
  steering.pulse_indices = mask.valid_indices();
  steering.delays_s = delays_s;
  const auto rows = static_cast<long long>(steering.pulse_indices.size());
  const auto cols = static_cast<long long>(delays_s.size());
  if (rows < cols)
    throw UnderdeterminedError("fewer valid pulses than estimated scatterers");
  steering.entries.resize(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    const double freq = config.pulse_frequency_hz(steering.pulse_indices[i]);
    for (long long k = 0; k < cols; ++k) {
      const double phase = -kTwoPi * freq * delays_s[k];
      steering.entries(i, k) = cplx(std::cos(phase), std::sin(phase));
    }
  }
  return steering;
}

std::vector<cplx> least_squares_amplitudes(const SteeringMatrix& steering,
                                           const std::vector<cplx>& observations) {
  const long long rows = steering.rows();
  const long long cols = steering.cols();
  if (static_cast<long long>(observations.size()) != rows)
    throw InvalidInputError("observation count does not match steering rows");
  if (cols == 0) throw InvalidInputError("steering matrix has no columns");

  // cond(F^H F) = cond(F)^2; estimate via singular values of F.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(steering.entries);
  const double sigma_max = svd.singularValues()(0);
  const double sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  const double cond_sq =
      sigma_min > 0.0 ? (sigma_max / sigma_min) * (sigma_max / sigma_min)
                      : std::numeric_limits<double>::infinity();
  if (!(cond_sq <= 1e12)) {
    std::size_t pair_a = 0;
    std::size_t pair_b = steering.delays_s.size() > 1 ? 1 : 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < steering.delays_s.size(); ++a) {
      for (std::size_t b = a + 1; b < steering.delays_s.size(); ++b) {
        const double gap = std::abs(steering.delays_s[a] - steering.delays_s[b]);
        if (gap < best_gap) {
          best_gap = gap;
          pair_a = a;
          pair_b = b;
        }
      }
    }
    std::ostringstream msg;
    msg << "steering matrix ill-conditioned (cond^2 = " << cond_sq
        << "); closest delays " << steering.delays_s[pair_a] << " s and "
        << steering.delays_s[pair_b] << " s";
    throw ConditioningError(msg.str());
  }

  Eigen::VectorXcd y(rows);
  for (long long i = 0; i < rows; ++i) y(i) = observations[i];
  const Eigen::VectorXcd alpha =
      steering.entries.colPivHouseholderQr().solve(y);
  std::vector<cplx> result(cols);
  for (long long k = 0; k < cols; ++k) result[k] = alpha(k);
  return result;
}

Profile form_profile(const std::vector<double>& delays_s,
                     const std::vector<cplx>& amplitudes) {
  if (delays_s.size() != amplitudes.size())
    throw InvalidInputError("delay and amplitude counts differ");
  Profile profile;
  profile.points.reserve(delays_s.size());
  for (std::size_t k = 0; k < delays_s.size(); ++k) {
    ProfilePoint point;
    point.range_m = delay_to_range_m(delays_s[k]);
    point.amplitude = amplitudes[k];
    const double mag = std::abs(amplitudes[k]);
    point.magnitude_db = mag > 0.0 ? std::max(20.0 * std::log10(mag), kDbFloor)
                                   : kDbFloor;
    profile.points.push_back(point);
  }
  std::stable_sort(profile.points.begin(), profile.points.end(),
                   [](const ProfilePoint& a, const ProfilePoint& b) {
                     return a.range_m < b.range_m;
                   });
  return profile;
}

}  // namespace mmusic
