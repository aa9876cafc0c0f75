#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace mmusic {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Stepped-frequency pulse-train geometry. Pulse n is transmitted at
/// carrier f_n = start_frequency_hz + n * frequency_step_hz.
struct RadarConfig {
  int pulse_count = 0;                  // N
  double start_frequency_hz = 0.0;      // f_0
  double frequency_step_hz = 0.0;       // delta_f
  std::optional<double> noise_snr_db;   // empty -> noiseless synthesis

  double total_bandwidth_hz() const { return pulse_count * frequency_step_hz; }
  double pulse_frequency_hz(int n) const {
    return start_frequency_hz + n * frequency_step_hz;
  }
  /// Delays are unambiguous within [0, 1/delta_f).
  double unambiguous_delay_s() const { return 1.0 / frequency_step_hz; }
  /// Two-way range window c / (2 delta_f).
  double unambiguous_range_m() const {
    return kSpeedOfLight / (2.0 * frequency_step_hz);
  }
};

/// Throws InvalidInputError unless pulse_count >= 2, frequency_step_hz > 0
/// and start_frequency_hz >= 0.
void validate(const RadarConfig& config);

/// One point scatterer: two-way delay tau (seconds) and complex amplitude.
struct Scatterer {
  double delay_s = 0.0;
  cplx amplitude{0.0, 0.0};
};

using ScattererSet = std::vector<Scatterer>;

inline double delay_to_range_m(double delay_s) {
  return 0.5 * kSpeedOfLight * delay_s;
}
inline double range_to_delay_s(double range_m) {
  return 2.0 * range_m / kSpeedOfLight;
}

/// Per-pulse availability indicator I(k): 1 = pulse usable, 0 = polluted.
struct AvailabilityMask {
  std::vector<std::uint8_t> flags;

  int size() const { return static_cast<int>(flags.size()); }
  bool valid(int n) const { return flags[static_cast<std::size_t>(n)] != 0; }
  /// A = number of usable pulses.
  int valid_count() const;
  std::vector<int> valid_indices() const;
};

/// Complex baseband samples plus the availability mask. Entries at
/// masked-out indices are present but must never be read by estimators.
struct MaskedSamples {
  std::vector<cplx> samples;
  AvailabilityMask mask;

  int size() const { return static_cast<int>(samples.size()); }
};

}  // namespace mmusic
