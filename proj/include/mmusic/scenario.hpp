#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmusic/baseline_omp.hpp"
#include "mmusic/pipeline.hpp"
#include "mmusic/types.hpp"

namespace mmusic {

struct TargetSpec {
  double range_m = 0.0;
  double amplitude = 1.0;   // modulus
  double phase_deg = 0.0;
};

struct MaskSpec {
  enum class Kind { kFull, kRandom, kBlock, kExplicit };
  Kind kind = Kind::kFull;
  int valid_count = 0;                            // random
  std::uint64_t seed = 0;                         // random, advanced per trial
  std::vector<std::pair<int, int>> intervals;     // block, [start, end)
  std::vector<std::uint8_t> flags;                // explicit
};

struct EvaluationSettings {
  double gate_m = 0.15;
  double spurious_floor_db = 20.0;
};

/// One simulation batch: radar geometry, ground-truth targets, availability
/// pattern, seeds, method settings, and trial count.
struct Scenario {
  std::string name = "scenario";
  RadarConfig radar;
  std::vector<TargetSpec> targets;
  MaskSpec mask;
  std::uint64_t noise_seed = 0;  // advanced per trial
  int trials = 1;
  std::vector<std::string> methods{"mmusic"};
  MusicOptions music;
  OmpOptions omp;
  EvaluationSettings evaluation;
};

/// Strict parse: unknown or missing keys raise ConfigError naming the key
/// path; structural JSON errors keep the parser's line/column message.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

/// Canonical serialization (fixed key order, defaults materialized); the
/// config hash is FNV-1a 64 over these bytes, printed as 16 hex digits.
std::string canonical_json(const Scenario& scenario);
std::string config_hash_hex(const Scenario& scenario);

/// Hash for single-shot estimation outputs (profile verb), covering the
/// radar parameters and method options that shaped the result.
std::string estimation_hash_hex(const RadarConfig& config,
                                const MusicOptions& options);

/// Ground truth as synthesized: delay from range, complex amplitude from
/// modulus and phase.
ScattererSet to_scatterers(const Scenario& scenario);
Profile truth_profile(const Scenario& scenario);

AvailabilityMask build_mask(const Scenario& scenario, int trial);

/// Runs every trial and method, writing metrics.csv, summary.csv,
/// per-trial profile CSVs, and diagnostics.txt under out_dir. Per-trial
/// pipeline errors are recorded in the outputs, not rethrown.
void run_scenario(const Scenario& scenario, const std::string& out_dir);

/// Impulse rows (range, dB) for external plotting: ranges snapped to the
/// resolution grid, clipped to [0, span], duplicates merged by peak dB.
std::string emit_profile_plotdata(const Profile& profile, double resolution_m,
                                  double span_m);

}  // namespace mmusic
