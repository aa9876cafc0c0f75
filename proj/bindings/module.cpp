#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "mmusic/baseline_omp.hpp"
#include "mmusic/errors.hpp"
#include "mmusic/pipeline.hpp"
#include "mmusic/scenario.hpp"
#include "mmusic/signal_model.hpp"

namespace py = pybind11;

namespace {

mmusic::RadarConfig make_config(int pulse_count, double start_frequency_hz,
                                double frequency_step_hz,
                                std::optional<double> snr_db) {
  mmusic::RadarConfig config;
  config.pulse_count = pulse_count;
  config.start_frequency_hz = start_frequency_hz;
  config.frequency_step_hz = frequency_step_hz;
  config.noise_snr_db = snr_db;
  return config;
}

mmusic::MaskedSamples make_data(const std::vector<mmusic::cplx>& samples,
                                const std::vector<int>& flags) {
  if (samples.size() != flags.size())
    throw mmusic::InvalidInputError("samples and flags lengths differ");
  mmusic::MaskedSamples data;
  data.samples = samples;
  data.mask.flags.reserve(flags.size());
  for (const int f : flags) {
    if (f != 0 && f != 1)
      throw mmusic::InvalidInputError("mask flags must be 0 or 1");
    data.mask.flags.push_back(static_cast<std::uint8_t>(f));
  }
  return data;
}

std::vector<int> flags_of(const mmusic::AvailabilityMask& mask) {
  std::vector<int> flags;
  flags.reserve(mask.size());
  for (const std::uint8_t f : mask.flags) flags.push_back(f);
  return flags;
}

py::dict profile_to_dict(const mmusic::Profile& profile) {
  std::vector<double> ranges;
  std::vector<mmusic::cplx> amplitudes;
  std::vector<double> magnitudes_db;
  for (const mmusic::ProfilePoint& p : profile.points) {
    ranges.push_back(p.range_m);
    amplitudes.push_back(p.amplitude);
    magnitudes_db.push_back(p.magnitude_db);
  }
  py::dict out;
  out["range_m"] = ranges;
  out["amplitude"] = amplitudes;
  out["magnitude_db"] = magnitudes_db;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gap-tolerant stepped-frequency range profiling";
  m.attr("SPEED_OF_LIGHT") = mmusic::kSpeedOfLight;
  m.attr("__version__") = "0.1.0";

  const auto base = py::register_exception<mmusic::Error>(m, "Error");
  py::register_exception<mmusic::InvalidInputError>(m, "InvalidInputError", base);
  py::register_exception<mmusic::NoDataError>(m, "NoDataError", base);
  py::register_exception<mmusic::InsufficientDataError>(m, "InsufficientDataError", base);
  py::register_exception<mmusic::UnderdeterminedError>(m, "UnderdeterminedError", base);
  py::register_exception<mmusic::ConditioningError>(m, "ConditioningError", base);
  py::register_exception<mmusic::NumericError>(m, "NumericError", base);
  py::register_exception<mmusic::NoSignalError>(m, "NoSignalError", base);
  py::register_exception<mmusic::ConfigError>(m, "ConfigError", base);

  m.def(
      "synthesize",
      [](int pulse_count, double start_frequency_hz, double frequency_step_hz,
         std::optional<double> snr_db,
         const std::vector<std::pair<double, mmusic::cplx>>& targets,
         std::uint64_t seed) {
        mmusic::ScattererSet set;
        set.reserve(targets.size());
        for (const auto& [delay, amplitude] : targets)
          set.push_back({delay, amplitude});
        const mmusic::MaskedSamples data =
            mmusic::synthesize(make_config(pulse_count, start_frequency_hz,
                                           frequency_step_hz, snr_db),
                               set, seed);
        return py::make_tuple(data.samples, flags_of(data.mask));
      },
      py::arg("pulse_count"), py::arg("start_frequency_hz"),
      py::arg("frequency_step_hz"), py::arg("snr_db"), py::arg("targets"),
      py::arg("seed") = 0,
      "Simulate one dwell; targets are (delay_s, complex amplitude) pairs.");

  m.def(
      "make_random_mask",
      [](int pulse_count, int valid_count, std::uint64_t seed) {
        return flags_of(mmusic::make_random_mask(pulse_count, valid_count, seed));
      },
      py::arg("pulse_count"), py::arg("valid_count"), py::arg("seed") = 0);

  m.def(
      "make_block_mask",
      [](int pulse_count, const std::vector<std::pair<int, int>>& intervals) {
        return flags_of(mmusic::make_block_mask(pulse_count, intervals));
      },
      py::arg("pulse_count"), py::arg("intervals"),
      "Zero out [start, end) pulse intervals.");

  m.def(
      "estimate_acf",
      [](const std::vector<mmusic::cplx>& samples, const std::vector<int>& flags,
         int max_lag) {
        const mmusic::AcfEstimate acf =
            mmusic::estimate_acf(make_data(samples, flags), max_lag);
        py::dict out;
        out["values"] = acf.values;
        out["pair_counts"] = acf.pair_counts;
        return out;
      },
      py::arg("samples"), py::arg("flags"), py::arg("max_lag"));

  m.def(
      "estimate",
      [](const std::vector<mmusic::cplx>& samples, const std::vector<int>& flags,
         double start_frequency_hz, double frequency_step_hz,
         std::optional<double> snr_db, const std::string& selector,
         double threshold_ratio, std::optional<int> max_matrix_size,
         std::optional<long long> effective_samples, double diagonal_loading) {
        mmusic::MusicOptions options;
        if (selector == "aic")
          options.selector = mmusic::OrderSelector::kAic;
        else if (selector == "threshold")
          options.selector = mmusic::OrderSelector::kThreshold;
        else
          throw mmusic::InvalidInputError("selector must be aic or threshold");
        options.threshold_ratio = threshold_ratio;
        options.max_matrix_size = max_matrix_size;
        options.effective_samples = effective_samples;
        options.diagonal_loading = diagonal_loading;
        const mmusic::MusicEstimate est = mmusic::estimate_mmusic(
            make_config(static_cast<int>(samples.size()), start_frequency_hz,
                        frequency_step_hz, snr_db),
            make_data(samples, flags), options);
        py::dict out;
        out["matrix_size"] = est.matrix_size;
        out["size_rule_fallback"] = est.size_rule_fallback;
        std::vector<double> eigenvalues(est.eigenvalues.size());
        for (long long i = 0; i < est.eigenvalues.size(); ++i)
          eigenvalues[static_cast<std::size_t>(i)] = est.eigenvalues(i);
        out["eigenvalues"] = eigenvalues;
        out["k_hat"] = est.signal_dim;
        out["roots"] = est.roots.roots;
        out["selected_roots"] = est.roots.selected;
        out["delays_s"] = est.roots.delays;
        out["amplitudes"] = est.amplitudes;
        out["profile"] = profile_to_dict(est.profile);
        return out;
      },
      py::arg("samples"), py::arg("flags"), py::arg("start_frequency_hz"),
      py::arg("frequency_step_hz"), py::arg("snr_db") = std::nullopt,
      py::arg("selector") = "aic", py::arg("threshold_ratio") = 0.01,
      py::arg("max_matrix_size") = std::nullopt,
      py::arg("effective_samples") = std::nullopt,
      py::arg("diagonal_loading") = 0.0,
      "Run the full subspace estimation chain on masked samples.");

  m.def(
      "omp_baseline",
      [](const std::vector<mmusic::cplx>& samples, const std::vector<int>& flags,
         double start_frequency_hz, double frequency_step_hz,
         std::optional<double> snr_db, int grid_factor,
         std::optional<int> grid_size, std::optional<int> max_atoms,
         std::optional<double> residual_tol) {
        mmusic::OmpOptions options;
        options.grid_factor = grid_factor;
        options.grid_size = grid_size;
        options.max_atoms = max_atoms;
        options.residual_tol = residual_tol;
        const mmusic::OmpResult result = mmusic::run_omp_baseline(
            make_config(static_cast<int>(samples.size()), start_frequency_hz,
                        frequency_step_hz, snr_db),
            make_data(samples, flags), options);
        py::dict out;
        out["atom_indices"] = result.atom_indices;
        out["residual_norms"] = result.residual_norms;
        out["profile"] = profile_to_dict(result.profile);
        return out;
      },
      py::arg("samples"), py::arg("flags"), py::arg("start_frequency_hz"),
      py::arg("frequency_step_hz"), py::arg("snr_db") = std::nullopt,
      py::arg("grid_factor") = 4, py::arg("grid_size") = std::nullopt,
      py::arg("max_atoms") = std::nullopt,
      py::arg("residual_tol") = std::nullopt,
      "Grid-dictionary orthogonal matching pursuit baseline.");

  m.def(
      "run_scenario_file",
      [](const std::string& path, const std::string& out_dir) {
        const mmusic::Scenario scenario = mmusic::load_scenario_file(path);
        mmusic::run_scenario(scenario, out_dir);
        return mmusic::config_hash_hex(scenario);
      },
      py::arg("path"), py::arg("out_dir"),
      "Run a scenario file; returns the config hash stamped on outputs.");

  m.def("delay_to_range_m", &mmusic::delay_to_range_m, py::arg("delay_s"));
  m.def("range_to_delay_s", &mmusic::range_to_delay_s, py::arg("range_m"));
}
