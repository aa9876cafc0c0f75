#include "mmusic/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mmusic/errors.hpp"
#include "mmusic/evaluation.hpp"
#include "mmusic/io.hpp"
#include "mmusic/signal_model.hpp"

namespace mmusic {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(path, "unknown key '" + item.key() + "'");
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  return value.get<double>();
}

long long as_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  return value.get<long long>();
}

std::uint64_t as_seed(const json& value, const std::string& path) {
  if (!value.is_number_integer() && !value.is_number_unsigned())
    fail(path, "expected an integer seed");
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  const long long v = value.get<long long>();
  if (v < 0) fail(path, "seed must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

void parse_radar(const json& obj, Scenario& scenario) {
  if (!obj.is_object()) fail("radar", "expected an object");
  check_keys(obj, "radar",
             {"pulse_count", "start_frequency_hz", "frequency_step_hz",
              "noise_snr_db"});
  scenario.radar.pulse_count =
      static_cast<int>(as_integer(require(obj, "radar", "pulse_count"),
                                  "radar.pulse_count"));
  scenario.radar.start_frequency_hz =
      as_number(require(obj, "radar", "start_frequency_hz"),
                "radar.start_frequency_hz");
  scenario.radar.frequency_step_hz =
      as_number(require(obj, "radar", "frequency_step_hz"),
                "radar.frequency_step_hz");
  if (const auto it = obj.find("noise_snr_db");
      it != obj.end() && !it->is_null())
    scenario.radar.noise_snr_db = as_number(*it, "radar.noise_snr_db");
}

void parse_targets(const json& arr, Scenario& scenario) {
  if (!arr.is_array() || arr.empty())
    fail("targets", "expected a nonempty array");
  const double window = scenario.radar.unambiguous_range_m();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "targets[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    if (!entry.is_object()) fail(path, "expected an object");
    check_keys(entry, path, {"range_m", "amplitude", "phase_deg"});
    TargetSpec target;
    target.range_m = as_number(require(entry, path, "range_m"), path + ".range_m");
    if (const auto it = entry.find("amplitude"); it != entry.end())
      target.amplitude = as_number(*it, path + ".amplitude");
    if (const auto it = entry.find("phase_deg"); it != entry.end())
      target.phase_deg = as_number(*it, path + ".phase_deg");
    if (target.range_m < 0.0 || target.range_m >= window)
      fail(path + ".range_m", "outside the unambiguous window [0, " +
                                  format_double(window) + ") m");
    if (target.amplitude < 0.0) fail(path + ".amplitude", "modulus must be nonnegative");
    scenario.targets.push_back(target);
  }
}

void parse_mask(const json& obj, Scenario& scenario) {
  if (!obj.is_object()) fail("mask", "expected an object");
  const std::string type = as_string(require(obj, "mask", "type"), "mask.type");
  const int n = scenario.radar.pulse_count;
  if (type == "full") {
    check_keys(obj, "mask", {"type"});
    scenario.mask.kind = MaskSpec::Kind::kFull;
  } else if (type == "random") {
    check_keys(obj, "mask", {"type", "valid_count", "seed"});
    scenario.mask.kind = MaskSpec::Kind::kRandom;
    scenario.mask.valid_count = static_cast<int>(
        as_integer(require(obj, "mask", "valid_count"), "mask.valid_count"));
    if (scenario.mask.valid_count < 1 || scenario.mask.valid_count > n)
      fail("mask.valid_count", "must be within [1, pulse_count]");
    if (const auto it = obj.find("seed"); it != obj.end())
      scenario.mask.seed = as_seed(*it, "mask.seed");
  } else if (type == "block") {
    check_keys(obj, "mask", {"type", "intervals"});
    scenario.mask.kind = MaskSpec::Kind::kBlock;
    const json& intervals = require(obj, "mask", "intervals");
    if (!intervals.is_array() || intervals.empty())
      fail("mask.intervals", "expected a nonempty array");
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      const std::string path = "mask.intervals[" + std::to_string(i) + "]";
      const json& pair = intervals[i];
      if (!pair.is_array() || pair.size() != 2) fail(path, "expected [start, end]");
      scenario.mask.intervals.emplace_back(
          static_cast<int>(as_integer(pair[0], path + "[0]")),
          static_cast<int>(as_integer(pair[1], path + "[1]")));
    }
  } else if (type == "explicit") {
    check_keys(obj, "mask", {"type", "flags"});
    scenario.mask.kind = MaskSpec::Kind::kExplicit;
    const json& flags = require(obj, "mask", "flags");
    if (!flags.is_array() || static_cast<int>(flags.size()) != n)
      fail("mask.flags", "expected pulse_count flags");
    for (std::size_t i = 0; i < flags.size(); ++i) {
      const long long f =
          as_integer(flags[i], "mask.flags[" + std::to_string(i) + "]");
      if (f != 0 && f != 1)
        fail("mask.flags[" + std::to_string(i) + "]", "expected 0 or 1");
      scenario.mask.flags.push_back(static_cast<std::uint8_t>(f));
    }
  } else {
    fail("mask.type", "expected one of full|random|block|explicit");
  }
}

void parse_music(const json& obj, Scenario& scenario) {
  if (!obj.is_object()) fail("music", "expected an object");
  check_keys(obj, "music",
             {"order_selector", "threshold_ratio", "max_matrix_size",
              "effective_samples", "diagonal_loading"});
  if (const auto it = obj.find("order_selector"); it != obj.end()) {
    const std::string selector = as_string(*it, "music.order_selector");
    if (selector == "aic")
      scenario.music.selector = OrderSelector::kAic;
    else if (selector == "threshold")
      scenario.music.selector = OrderSelector::kThreshold;
    else
      fail("music.order_selector", "expected aic or threshold");
  }
  if (const auto it = obj.find("threshold_ratio"); it != obj.end()) {
    scenario.music.threshold_ratio = as_number(*it, "music.threshold_ratio");
    if (!(scenario.music.threshold_ratio > 0.0))
      fail("music.threshold_ratio", "must be positive");
  }
  if (const auto it = obj.find("max_matrix_size");
      it != obj.end() && !it->is_null())
    scenario.music.max_matrix_size =
        static_cast<int>(as_integer(*it, "music.max_matrix_size"));
  if (const auto it = obj.find("effective_samples");
      it != obj.end() && !it->is_null())
    scenario.music.effective_samples = as_integer(*it, "music.effective_samples");
  if (const auto it = obj.find("diagonal_loading"); it != obj.end())
    scenario.music.diagonal_loading = as_number(*it, "music.diagonal_loading");
}

void parse_omp(const json& obj, Scenario& scenario) {
  if (!obj.is_object()) fail("omp", "expected an object");
  check_keys(obj, "omp",
             {"grid_factor", "grid_size", "max_atoms", "residual_tol"});
  if (const auto it = obj.find("grid_factor"); it != obj.end()) {
    scenario.omp.grid_factor = static_cast<int>(as_integer(*it, "omp.grid_factor"));
    if (scenario.omp.grid_factor < 1) fail("omp.grid_factor", "must be at least 1");
  }
  if (const auto it = obj.find("grid_size"); it != obj.end() && !it->is_null())
    scenario.omp.grid_size = static_cast<int>(as_integer(*it, "omp.grid_size"));
  if (const auto it = obj.find("max_atoms"); it != obj.end() && !it->is_null())
    scenario.omp.max_atoms = static_cast<int>(as_integer(*it, "omp.max_atoms"));
  if (const auto it = obj.find("residual_tol"); it != obj.end() && !it->is_null())
    scenario.omp.residual_tol = as_number(*it, "omp.residual_tol");
}

void parse_evaluation(const json& obj, Scenario& scenario) {
  if (!obj.is_object()) fail("evaluation", "expected an object");
  check_keys(obj, "evaluation", {"gate_m", "spurious_floor_db"});
  if (const auto it = obj.find("gate_m"); it != obj.end()) {
    scenario.evaluation.gate_m = as_number(*it, "evaluation.gate_m");
    if (!(scenario.evaluation.gate_m > 0.0)) fail("evaluation.gate_m", "must be positive");
  }
  if (const auto it = obj.find("spurious_floor_db"); it != obj.end()) {
    scenario.evaluation.spurious_floor_db =
        as_number(*it, "evaluation.spurious_floor_db");
    if (scenario.evaluation.spurious_floor_db < 0.0)
      fail("evaluation.spurious_floor_db", "must be nonnegative");
  }
}

ordered_json mask_to_json(const MaskSpec& mask) {
  ordered_json obj;
  switch (mask.kind) {
    case MaskSpec::Kind::kFull:
      obj["type"] = "full";
      break;
    case MaskSpec::Kind::kRandom:
      obj["type"] = "random";
      obj["valid_count"] = mask.valid_count;
      obj["seed"] = mask.seed;
      break;
    case MaskSpec::Kind::kBlock: {
      obj["type"] = "block";
      ordered_json intervals = ordered_json::array();
      for (const auto& [start, end] : mask.intervals)
        intervals.push_back({start, end});
      obj["intervals"] = intervals;
      break;
    }
    case MaskSpec::Kind::kExplicit:
      obj["type"] = "explicit";
      obj["flags"] = mask.flags;
      break;
  }
  return obj;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string to_hex(std::uint64_t value) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

ordered_json music_to_json(const MusicOptions& music) {
  ordered_json obj;
  obj["order_selector"] =
      music.selector == OrderSelector::kAic ? "aic" : "threshold";
  obj["threshold_ratio"] = music.threshold_ratio;
  obj["max_matrix_size"] =
      music.max_matrix_size ? ordered_json(*music.max_matrix_size) : ordered_json();
  obj["effective_samples"] = music.effective_samples
                                 ? ordered_json(*music.effective_samples)
                                 : ordered_json();
  obj["diagonal_loading"] = music.diagonal_loading;
  return obj;
}

ordered_json radar_to_json(const RadarConfig& radar) {
  ordered_json obj;
  obj["pulse_count"] = radar.pulse_count;
  obj["start_frequency_hz"] = radar.start_frequency_hz;
  obj["frequency_step_hz"] = radar.frequency_step_hz;
  obj["noise_snr_db"] =
      radar.noise_snr_db ? ordered_json(*radar.noise_snr_db) : ordered_json();
  return obj;
}

std::string csv_cell(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

struct MethodAggregate {
  int total = 0;
  int completed = 0;
  int order_correct = 0;
  std::vector<double> rmse;
  std::vector<double> max_error;
  std::vector<double> amp_error;
  std::vector<int> spurious;
};

std::string mean_cell(const std::vector<double>& values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (const double v : values) sum += v;
  return format_double(sum / static_cast<double>(values.size()));
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  if (!root.is_object()) throw ConfigError("scenario: expected a JSON object");
  check_keys(root, "scenario",
             {"name", "radar", "targets", "mask", "noise_seed", "trials",
              "methods", "music", "omp", "evaluation"});

  Scenario scenario;
  if (const auto it = root.find("name"); it != root.end())
    scenario.name = as_string(*it, "name");
  parse_radar(require(root, "scenario", "radar"), scenario);
  try {
    validate(scenario.radar);
  } catch (const InvalidInputError& e) {
    throw ConfigError(std::string("radar: ") + e.what());
  }
  parse_targets(require(root, "scenario", "targets"), scenario);
  parse_mask(require(root, "scenario", "mask"), scenario);
  if (const auto it = root.find("noise_seed"); it != root.end())
    scenario.noise_seed = as_seed(*it, "noise_seed");
  if (const auto it = root.find("trials"); it != root.end()) {
    scenario.trials = static_cast<int>(as_integer(*it, "trials"));
    if (scenario.trials < 1) fail("trials", "must be at least 1");
  }
  if (const auto it = root.find("methods"); it != root.end()) {
    if (!it->is_array() || it->empty()) fail("methods", "expected a nonempty array");
    scenario.methods.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string method =
          as_string((*it)[i], "methods[" + std::to_string(i) + "]");
      if (method != "mmusic" && method != "omp")
        fail("methods[" + std::to_string(i) + "]", "expected mmusic or omp");
      if (std::find(scenario.methods.begin(), scenario.methods.end(), method) ==
          scenario.methods.end())
        scenario.methods.push_back(method);
    }
  }
  if (const auto it = root.find("music"); it != root.end())
    parse_music(*it, scenario);
  if (const auto it = root.find("omp"); it != root.end()) parse_omp(*it, scenario);
  if (const auto it = root.find("evaluation"); it != root.end())
    parse_evaluation(*it, scenario);
  return scenario;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string canonical_json(const Scenario& scenario) {
  ordered_json root;
  root["name"] = scenario.name;
  root["radar"] = radar_to_json(scenario.radar);
  ordered_json targets = ordered_json::array();
  for (const TargetSpec& t : scenario.targets) {
    ordered_json entry;
    entry["range_m"] = t.range_m;
    entry["amplitude"] = t.amplitude;
    entry["phase_deg"] = t.phase_deg;
    targets.push_back(entry);
  }
  root["targets"] = targets;
  root["mask"] = mask_to_json(scenario.mask);
  root["noise_seed"] = scenario.noise_seed;
  root["trials"] = scenario.trials;
  root["methods"] = scenario.methods;
  root["music"] = music_to_json(scenario.music);
  ordered_json omp_obj;
  omp_obj["grid_factor"] = scenario.omp.grid_factor;
  omp_obj["grid_size"] =
      scenario.omp.grid_size ? ordered_json(*scenario.omp.grid_size) : ordered_json();
  omp_obj["max_atoms"] =
      scenario.omp.max_atoms ? ordered_json(*scenario.omp.max_atoms) : ordered_json();
  omp_obj["residual_tol"] = scenario.omp.residual_tol
                                ? ordered_json(*scenario.omp.residual_tol)
                                : ordered_json();
  root["omp"] = omp_obj;
  ordered_json eval_obj;
  eval_obj["gate_m"] = scenario.evaluation.gate_m;
  eval_obj["spurious_floor_db"] = scenario.evaluation.spurious_floor_db;
  root["evaluation"] = eval_obj;
  return root.dump();
}

std::string config_hash_hex(const Scenario& scenario) {
  return to_hex(fnv1a64(canonical_json(scenario)));
}

std::string estimation_hash_hex(const RadarConfig& config,
                                const MusicOptions& options) {
  ordered_json root;
  root["radar"] = radar_to_json(config);
  root["music"] = music_to_json(options);
  return to_hex(fnv1a64(root.dump()));
}

ScattererSet to_scatterers(const Scenario& scenario) {
  ScattererSet set;
  set.reserve(scenario.targets.size());
  for (const TargetSpec& t : scenario.targets) {
    const double phase = t.phase_deg * std::numbers::pi / 180.0;
    set.push_back({range_to_delay_s(t.range_m),
                   t.amplitude * cplx(std::cos(phase), std::sin(phase))});
  }
  return set;
}

Profile truth_profile(const Scenario& scenario) {
  std::vector<double> delays;
  std::vector<cplx> amplitudes;
  for (const Scatterer& s : to_scatterers(scenario)) {
    delays.push_back(s.delay_s);
    amplitudes.push_back(s.amplitude);
  }
  return form_profile(delays, amplitudes);
}

AvailabilityMask build_mask(const Scenario& scenario, int trial) {
  const int n = scenario.radar.pulse_count;
  switch (scenario.mask.kind) {
    case MaskSpec::Kind::kFull: {
      AvailabilityMask mask;
      mask.flags.assign(static_cast<std::size_t>(n), 1);
      return mask;
    }
    case MaskSpec::Kind::kRandom:
      return make_random_mask(n, scenario.mask.valid_count,
                              scenario.mask.seed + static_cast<std::uint64_t>(trial));
    case MaskSpec::Kind::kBlock:
      return make_block_mask(n, scenario.mask.intervals);
    case MaskSpec::Kind::kExplicit: {
      AvailabilityMask mask;
      mask.flags = scenario.mask.flags;
      return mask;
    }
  }
  throw InvalidInputError("unhandled mask kind");
}

void run_scenario(const Scenario& scenario, const std::string& out_dir) {
  validate(scenario.radar);
  std::filesystem::create_directories(out_dir);
  const std::string hash = config_hash_hex(scenario);
  const ScattererSet scatterers = to_scatterers(scenario);
  const Profile truth = truth_profile(scenario);

  std::ofstream metrics(out_dir + "/metrics.csv");
  if (!metrics) throw InvalidInputError("cannot write to output directory: " + out_dir);
  metrics << "# config_hash=" << hash << "\n";
  metrics << "trial,method,status,k_hat,matrix_size,size_rule_fallback,"
             "n_matched,n_missed,n_spurious,order_correct,range_rmse_m,"
             "max_range_error_m,amplitude_rms_relative_error,"
             "spurious_peak_count\n";
  std::ofstream diag(out_dir + "/diagnostics.txt");
  diag << "# config_hash=" << hash << "\n";

  std::map<std::string, MethodAggregate> aggregates;

  for (int trial = 0; trial < scenario.trials; ++trial) {
    const AvailabilityMask mask = build_mask(scenario, trial);
    const MaskedSamples synthesized = synthesize(
        scenario.radar, scatterers,
        scenario.noise_seed + static_cast<std::uint64_t>(trial));
    const MaskedSamples data = apply_mask(synthesized, mask);

    for (const std::string& method : scenario.methods) {
      MethodAggregate& agg = aggregates[method];
      ++agg.total;
      diag << "trial " << trial << " method " << method << "\n";

      Profile profile;
      std::string status = "ok";
      std::string k_hat_cell;
      std::string matrix_cell;
      std::string fallback_cell;
      try {
        if (method == "mmusic") {
          const MusicEstimate est = estimate_mmusic(scenario.radar, data,
                                                    scenario.music);
          profile = est.profile;
          k_hat_cell = std::to_string(est.signal_dim);
          matrix_cell = std::to_string(est.matrix_size);
          fallback_cell = est.size_rule_fallback ? "1" : "0";
          diag << "  status ok\n";
          diag << "  matrix_size " << est.matrix_size << "\n";
          diag << "  size_rule_fallback " << (est.size_rule_fallback ? 1 : 0)
               << "\n";
          diag << "  pair_counts";
          for (int h = 0; h < est.matrix_size; ++h)
            diag << " " << est.acf.pair_counts[h];
          diag << "\n";
          diag << "  eigenvalues";
          for (long long i = 0; i < est.eigenvalues.size(); ++i)
            diag << " " << format_double(est.eigenvalues(i));
          diag << "\n";
          diag << "  k_hat " << est.signal_dim << "\n";
          diag << "  selected_roots";
          for (const cplx& z : est.roots.selected)
            diag << " " << format_double(z.real()) << (z.imag() < 0 ? "-" : "+")
                 << format_double(std::abs(z.imag())) << "j";
          diag << "\n";
          diag << "  delays_s";
          for (const double tau : est.roots.delays)
            diag << " " << format_double(tau);
          diag << "\n";
        } else {
          const OmpResult omp_run =
              run_omp_baseline(scenario.radar, data, scenario.omp);
          profile = omp_run.profile;
          k_hat_cell = std::to_string(omp_run.atom_indices.size());
          diag << "  status ok\n";
          diag << "  atoms " << omp_run.atom_indices.size() << "\n";
          diag << "  residual_norms";
          for (const double r : omp_run.residual_norms)
            diag << " " << format_double(r);
          diag << "\n";
        }
      } catch (const Error& e) {
        status = "error";
        diag << "  status error: " << e.what() << "\n";
      }

      if (status == "ok") {
        ++agg.completed;
        const MatchReport report =
            match_scatterers(truth, profile, scenario.evaluation.gate_m);
        const int spurious = spurious_peak_count(
            profile, scenario.evaluation.spurious_floor_db);
        std::optional<double> max_error;
        for (const Match& m : report.matches) {
          if (!max_error || m.range_error_m > *max_error)
            max_error = m.range_error_m;
        }
        if (report.order_correct) ++agg.order_correct;
        if (report.range_rmse_m) agg.rmse.push_back(*report.range_rmse_m);
        if (max_error) agg.max_error.push_back(*max_error);
        if (report.amplitude_rms_relative_error)
          agg.amp_error.push_back(*report.amplitude_rms_relative_error);
        agg.spurious.push_back(spurious);

        std::ostringstream profile_name;
        profile_name << "profile_trial" << trial << "_" << method << ".csv";
        std::ofstream profile_file(out_dir + "/" + profile_name.str());
        profile_file << "# config_hash=" << hash << "\n";
        profile_file << "range_m,amplitude_re,amplitude_im,magnitude_db\n";
        for (const ProfilePoint& p : profile.points)
          profile_file << format_double(p.range_m) << ","
                       << format_double(p.amplitude.real()) << ","
                       << format_double(p.amplitude.imag()) << ","
                       << format_double(p.magnitude_db) << "\n";

        metrics << trial << "," << method << ",ok," << k_hat_cell << ","
                << matrix_cell << "," << fallback_cell << ","
                << report.matches.size() << "," << report.missed.size() << ","
                << report.spurious.size() << ","
                << (report.order_correct ? 1 : 0) << ","
                << csv_cell(report.range_rmse_m) << "," << csv_cell(max_error)
                << "," << csv_cell(report.amplitude_rms_relative_error) << ","
                << spurious << "\n";
      } else {
        metrics << trial << "," << method << ",error,,,,,,,,,,,\n";
      }
    }
  }

  std::ofstream summary(out_dir + "/summary.csv");
  summary << "# config_hash=" << hash << "\n";
  summary << "method,trials,completed,order_correct_rate,mean_range_rmse_m,"
             "mean_max_range_error_m,mean_amplitude_rms_relative_error,"
             "mean_spurious_peak_count\n";
  for (const std::string& method : scenario.methods) {
    const MethodAggregate& agg = aggregates[method];
    summary << method << "," << agg.total << "," << agg.completed << ","
            << format_double(agg.total > 0 ? static_cast<double>(agg.order_correct) /
                                                 agg.total
                                           : 0.0)
            << "," << mean_cell(agg.rmse) << "," << mean_cell(agg.max_error)
            << "," << mean_cell(agg.amp_error) << ",";
    if (agg.spurious.empty()) {
      summary << "\n";
    } else {
      double sum = 0.0;
      for (const int s : agg.spurious) sum += s;
      summary << format_double(sum / static_cast<double>(agg.spurious.size()))
              << "\n";
    }
  }
}

std::string emit_profile_plotdata(const Profile& profile, double resolution_m,
                                  double span_m) {
  if (!(resolution_m > 0.0)) throw InvalidInputError("resolution must be positive");
  if (!(span_m > 0.0)) throw InvalidInputError("span must be positive");
  std::map<long long, double> bins;  // grid index -> peak dB
  for (const ProfilePoint& p : profile.points) {
    const long long index = std::llround(p.range_m / resolution_m);
    const double snapped = static_cast<double>(index) * resolution_m;
    if (snapped < 0.0 || snapped > span_m) continue;
    const auto it = bins.find(index);
    if (it == bins.end() || p.magnitude_db > it->second)
      bins[index] = p.magnitude_db;
  }
  std::ostringstream out;
  out << "range_m,magnitude_db\n";
  for (const auto& [index, db] : bins)
    out << format_double(static_cast<double>(index) * resolution_m) << ","
        << format_double(db) << "\n";
  return out.str();
}

}  // namespace mmusic
