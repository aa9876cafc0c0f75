#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mmusic/errors.hpp"
#include "mmusic/io.hpp"
#include "mmusic/pipeline.hpp"
#include "mmusic/scenario.hpp"
#include "mmusic/signal_model.hpp"

namespace {

struct ProfileArgs {
  std::string samples_path;
  std::string mask_path;
  double start_frequency_hz = 0.0;
  double frequency_step_hz = 0.0;
  std::optional<double> snr_db;
  std::string selector = "aic";
  double threshold_ratio = 0.01;
  std::optional<int> max_matrix_size;
  std::optional<long long> effective_samples;
  double diagonal_loading = 0.0;
  std::string out_path;
};

struct MaskArgs {
  int pulse_count = 0;
  std::string type = "random";
  int valid_count = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> intervals;
  std::string out_path;
};

int run_profile(const ProfileArgs& args) {
  mmusic::MaskedSamples data;
  data.samples = mmusic::read_samples_file(args.samples_path);
  data.mask = mmusic::read_mask_file(args.mask_path);
  if (data.mask.size() != data.samples.size())
    throw mmusic::InvalidInputError("samples and mask files disagree on pulse count");

  mmusic::RadarConfig config;
  config.pulse_count = static_cast<int>(data.samples.size());
  config.start_frequency_hz = args.start_frequency_hz;
  config.frequency_step_hz = args.frequency_step_hz;
  config.noise_snr_db = args.snr_db;

  mmusic::MusicOptions options;
  options.selector = args.selector == "threshold"
                         ? mmusic::OrderSelector::kThreshold
                         : mmusic::OrderSelector::kAic;
  options.threshold_ratio = args.threshold_ratio;
  options.max_matrix_size = args.max_matrix_size;
  options.effective_samples = args.effective_samples;
  options.diagonal_loading = args.diagonal_loading;

  const mmusic::MusicEstimate estimate =
      mmusic::estimate_mmusic(config, data, options);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw mmusic::InvalidInputError("cannot write output file: " + args.out_path);
    out = &file;
  }
  *out << "# config_hash=" << mmusic::estimation_hash_hex(config, options) << "\n";
  *out << "# matrix_size=" << estimate.matrix_size
       << " size_rule_fallback=" << (estimate.size_rule_fallback ? 1 : 0)
       << " k_hat=" << estimate.signal_dim << "\n";
  *out << "range_m,amplitude_re,amplitude_im,magnitude_db\n";
  for (const mmusic::ProfilePoint& p : estimate.profile.points)
    *out << mmusic::format_double(p.range_m) << ","
         << mmusic::format_double(p.amplitude.real()) << ","
         << mmusic::format_double(p.amplitude.imag()) << ","
         << mmusic::format_double(p.magnitude_db) << "\n";
  return 0;
}

int run_masks_gen(const MaskArgs& args) {
  mmusic::AvailabilityMask mask;
  if (args.type == "full") {
    mask.flags.assign(static_cast<std::size_t>(args.pulse_count), 1);
    if (args.pulse_count < 1)
      throw mmusic::ConfigError("--pulse-count must be at least 1");
  } else if (args.type == "random") {
    mask = mmusic::make_random_mask(args.pulse_count, args.valid_count, args.seed);
  } else if (args.type == "block") {
    std::vector<std::pair<int, int>> intervals;
    for (const std::string& spec : args.intervals) {
      const auto colon = spec.find(':');
      if (colon == std::string::npos)
        throw mmusic::ConfigError("interval must be start:end, got '" + spec + "'");
      intervals.emplace_back(std::stoi(spec.substr(0, colon)),
                             std::stoi(spec.substr(colon + 1)));
    }
    if (intervals.empty())
      throw mmusic::ConfigError("block masks need at least one --interval");
    mask = mmusic::make_block_mask(args.pulse_count, intervals);
  } else {
    throw mmusic::ConfigError("mask type must be full, random, or block");
  }
  mmusic::write_mask_file(args.out_path, mask);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stepped-frequency HRR profiling with missing pulses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mmusic 0.1.0");

  std::string scenario_path;
  std::string out_dir = ".";
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required();
  run_cmd->add_option("--out", out_dir, "Output directory");

  ProfileArgs profile_args;
  double snr_value = 0.0;
  int max_matrix_value = 0;
  long long effective_value = 0;
  CLI::App* profile_cmd = app.add_subcommand(
      "profile", "Estimate a profile from sample and mask files");
  profile_cmd->add_option("samples", profile_args.samples_path,
                          "Samples file (real imag per line)")
      ->required();
  profile_cmd->add_option("mask", profile_args.mask_path,
                          "Mask file (0/1 per line)")
      ->required();
  profile_cmd
      ->add_option("--start-frequency-hz", profile_args.start_frequency_hz,
                   "Carrier start frequency f_0")
      ->required();
  profile_cmd
      ->add_option("--frequency-step-hz", profile_args.frequency_step_hz,
                   "Frequency step per pulse")
      ->required();
  CLI::Option* snr_opt =
      profile_cmd->add_option("--snr-db", snr_value, "Per-sample SNR in dB");
  profile_cmd->add_option("--selector", profile_args.selector,
                          "Order selector: aic or threshold")
      ->check(CLI::IsMember({"aic", "threshold"}));
  profile_cmd->add_option("--threshold-ratio", profile_args.threshold_ratio,
                          "Threshold as a fraction of the top eigenvalue");
  CLI::Option* mms_opt = profile_cmd->add_option(
      "--max-matrix-size", max_matrix_value, "Covariance size cap");
  CLI::Option* eff_opt = profile_cmd->add_option(
      "--effective-samples", effective_value, "Sample count used by AIC");
  profile_cmd->add_option("--diagonal-loading", profile_args.diagonal_loading,
                          "Additive covariance diagonal term");
  profile_cmd->add_option("--out", profile_args.out_path,
                          "Output CSV path (default stdout)");

  MaskArgs mask_args;
  CLI::App* masks_cmd = app.add_subcommand("masks", "Mask utilities");
  masks_cmd->require_subcommand(1);
  CLI::App* gen_cmd = masks_cmd->add_subcommand("gen", "Emit a mask file");
  gen_cmd->add_option("--pulse-count", mask_args.pulse_count, "Mask length")
      ->required();
  gen_cmd->add_option("--type", mask_args.type, "full, random, or block")
      ->check(CLI::IsMember({"full", "random", "block"}));
  gen_cmd->add_option("--valid-count", mask_args.valid_count,
                      "Valid pulses for random masks");
  gen_cmd->add_option("--seed", mask_args.seed, "Random mask seed");
  gen_cmd->add_option("--interval", mask_args.intervals,
                      "Masked interval start:end (repeatable)");
  gen_cmd->add_option("--out", mask_args.out_path, "Output mask file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      const mmusic::Scenario scenario = mmusic::load_scenario_file(scenario_path);
      mmusic::run_scenario(scenario, out_dir);
      return 0;
    }
    if (profile_cmd->parsed()) {
      if (snr_opt->count() > 0) profile_args.snr_db = snr_value;
      if (mms_opt->count() > 0) profile_args.max_matrix_size = max_matrix_value;
      if (eff_opt->count() > 0) profile_args.effective_samples = effective_value;
      return run_profile(profile_args);
    }
    if (masks_cmd->parsed()) return run_masks_gen(mask_args);
  } catch (const mmusic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const mmusic::InvalidInputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const mmusic::Error& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
