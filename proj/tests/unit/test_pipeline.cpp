#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"
#include "mmusic/errors.hpp"
#include "mmusic/pipeline.hpp"
#include "mmusic/signal_model.hpp"

using mmusic::cplx;

namespace {

mmusic::RadarConfig xband(int pulse_count) {
  mmusic::RadarConfig config;
  config.pulse_count = pulse_count;
  config.start_frequency_hz = 1.0e10;
  config.frequency_step_hz = 1.875e6;
  return config;
}

mmusic::MusicOptions threshold_options(double ratio = 0.1) {
  mmusic::MusicOptions options;
  options.selector = mmusic::OrderSelector::kThreshold;
  options.threshold_ratio = ratio;
  return options;
}

}  // namespace

TEST_CASE("a lone noiseless scatterer is recovered essentially exactly") {
  const auto config = xband(64);
  const double tau = mmusic::range_to_delay_s(40.0);
  const cplx amp(0.4, 0.69282032302755092);  // 0.8 * exp(j pi/3)
  const auto data = mmusic::synthesize(config, {{tau, amp}}, 0);

  const auto est = mmusic::estimate_mmusic(config, data, threshold_options());
  CHECK(est.matrix_size == 16);
  CHECK_FALSE(est.size_rule_fallback);
  REQUIRE(est.signal_dim == 1);
  REQUIRE(est.roots.delays.size() == 1);
  CHECK(std::abs(est.roots.delays[0] - tau) / tau < 1e-6);
  REQUIRE(est.amplitudes.size() == 1);
  CHECK(std::abs(std::abs(est.amplitudes[0]) - 0.8) < 1e-8);
  CHECK(std::abs(est.amplitudes[0] - amp) < 1e-4);  // f_0 amplifies delay error
  REQUIRE(est.profile.points.size() == 1);
  CHECK(std::abs(est.profile.points[0].range_m - 40.0) < 1e-4);
}

TEST_CASE("multi-scatterer noiseless bias stays well below the matching gate") {
  // the lag-averaged covariance keeps cross-scatterer terms, so noiseless
  // multi-target recovery is biased at the millimetre level, not exact
  const auto config = xband(512);
  const std::vector<double> ranges = {20.0, 25.0, 26.0, 32.0};
  const std::vector<double> amps = {1.0, 0.8, 0.6, 0.9};
  mmusic::ScattererSet target;
  for (std::size_t k = 0; k < ranges.size(); ++k)
    target.push_back({mmusic::range_to_delay_s(ranges[k]), cplx(amps[k], 0.0)});
  const auto data = mmusic::synthesize(config, target, 0);

  const auto est = mmusic::estimate_mmusic(config, data, threshold_options());
  REQUIRE(est.signal_dim == 4);
  REQUIRE(est.profile.points.size() == 4);
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    double best = 1e300;
    cplx best_amp;
    for (const auto& p : est.profile.points) {
      if (std::abs(p.range_m - ranges[k]) < best) {
        best = std::abs(p.range_m - ranges[k]);
        best_amp = p.amplitude;
      }
    }
    CHECK(best < 0.02);
    CHECK(std::abs(std::abs(best_amp) - amps[k]) / amps[k] < 0.05);
  }
}

TEST_CASE("the carrier frequency drops out of single-scatterer delay recovery") {
  const double tau = mmusic::range_to_delay_s(55.0);
  auto run = [&](double f0) {
    auto config = xband(64);
    config.start_frequency_hz = f0;
    const auto data = mmusic::synthesize(config, {{tau, cplx(1.0, 0.0)}}, 0);
    return mmusic::estimate_mmusic(config, data, threshold_options());
  };
  const auto base = run(0.0);
  const auto shifted = run(1.0e10);
  REQUIRE(base.roots.delays.size() == 1);
  REQUIRE(shifted.roots.delays.size() == 1);
  CHECK(std::abs(base.roots.delays[0] - shifted.roots.delays[0]) / tau < 1e-6);
  CHECK(std::abs(std::abs(base.amplitudes[0]) - std::abs(shifted.amplitudes[0])) <
        1e-8);
}

TEST_CASE("information-criterion order selection finds the lone scatterer") {
  const auto config = xband(64);
  const double tau = mmusic::range_to_delay_s(33.0);
  const auto data = mmusic::synthesize(config, {{tau, cplx(1.0, 0.0)}}, 0);
  const auto est = mmusic::estimate_mmusic(config, data, {});  // default: AIC
  REQUIRE(est.signal_dim == 1);
  CHECK(std::abs(est.roots.delays[0] - tau) / tau < 1e-6);
}

TEST_CASE("all-zero samples trip the no-signal error") {
  const auto config = xband(64);
  mmusic::MaskedSamples data;
  data.samples.assign(64, cplx(0.0, 0.0));
  data.mask.flags.assign(64, 1);
  CHECK_THROWS_AS(mmusic::estimate_mmusic(config, data, threshold_options()),
                  mmusic::NoSignalError);
}

TEST_CASE("an all-false mask trips the no-data error") {
  const auto config = xband(64);
  auto data = mmusic::synthesize(config, {{1e-7, cplx(1.0, 0.0)}}, 0);
  mmusic::AvailabilityMask none;
  none.flags.assign(64, 0);
  data = mmusic::apply_mask(data, none);
  CHECK_THROWS_AS(mmusic::estimate_mmusic(config, data, {}),
                  mmusic::NoDataError);
}

TEST_CASE("a mask with no usable lag pairs trips the insufficient-data error") {
  const auto config = xband(32);
  auto data = mmusic::synthesize(config, {{1e-7, cplx(1.0, 0.0)}}, 0);
  data = mmusic::apply_mask(data, testutil::alternating_mask(32));
  CHECK_THROWS_AS(mmusic::estimate_mmusic(config, data, {}),
                  mmusic::InsufficientDataError);
}

TEST_CASE("sparse random masks fall back to the largest defined size") {
  auto config = xband(512);
  config.noise_snr_db = 20.0;
  const double tau = mmusic::range_to_delay_s(40.0);
  auto data = mmusic::synthesize(config, {{tau, cplx(1.0, 0.0)}}, 2);
  data = mmusic::apply_mask(data, mmusic::make_random_mask(512, 300, 7));

  const auto est = mmusic::estimate_mmusic(config, data, threshold_options());
  CHECK(est.size_rule_fallback);
  CHECK(est.matrix_size == 128);
  REQUIRE(est.signal_dim >= 1);
  double best = 1e300;
  for (const double d : est.roots.delays) best = std::min(best, std::abs(d - tau));
  CHECK(best / tau < 1e-2);
}

TEST_CASE("effective sample count below the matrix size is rejected") {
  const auto config = xband(64);
  const auto data =
      mmusic::synthesize(config, {{mmusic::range_to_delay_s(40.0), cplx(1.0, 0.0)}}, 0);
  mmusic::MusicOptions options;
  options.effective_samples = 4;  // matrix size will be 16
  CHECK_THROWS_AS(mmusic::estimate_mmusic(config, data, options),
                  mmusic::InvalidInputError);
  options.effective_samples = 16;
  CHECK(mmusic::estimate_mmusic(config, data, options).signal_dim == 1);
}

TEST_CASE("the matrix-size cap is honored and validated") {
  const auto config = xband(64);
  const auto data =
      mmusic::synthesize(config, {{mmusic::range_to_delay_s(40.0), cplx(1.0, 0.0)}}, 0);

  auto options = threshold_options();
  options.max_matrix_size = 8;
  CHECK(mmusic::estimate_mmusic(config, data, options).matrix_size == 8);

  options.max_matrix_size = 500;  // clamps to the dwell length
  CHECK(mmusic::estimate_mmusic(config, data, options).matrix_size == 64);

  options.max_matrix_size = 1;
  CHECK_THROWS_AS(mmusic::estimate_mmusic(config, data, options),
                  mmusic::InvalidInputError);
}

TEST_CASE("estimation is bit-deterministic for identical inputs") {
  auto config = xband(256);
  config.noise_snr_db = 10.0;
  mmusic::ScattererSet target = {
      {mmusic::range_to_delay_s(20.0), cplx(1.0, 0.0)},
      {mmusic::range_to_delay_s(32.0), cplx(0.0, 0.9)},
  };
  auto data = mmusic::synthesize(config, target, 11);
  data = mmusic::apply_mask(data, mmusic::make_random_mask(256, 180, 5));

  const auto a = mmusic::estimate_mmusic(config, data, threshold_options());
  const auto b = mmusic::estimate_mmusic(config, data, threshold_options());
  REQUIRE(a.signal_dim == b.signal_dim);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.roots.delays == b.roots.delays);
  CHECK(a.amplitudes == b.amplitudes);
  REQUIRE(a.profile.points.size() == b.profile.points.size());
  for (std::size_t i = 0; i < a.profile.points.size(); ++i) {
    CHECK(a.profile.points[i].range_m == b.profile.points[i].range_m);
    CHECK(a.profile.points[i].magnitude_db == b.profile.points[i].magnitude_db);
  }
}

TEST_CASE("estimate structure is internally consistent on noisy gapped data") {
  auto config = xband(512);
  config.noise_snr_db = 15.0;
  mmusic::ScattererSet target = {
      {mmusic::range_to_delay_s(20.0), cplx(1.0, 0.0)},
      {mmusic::range_to_delay_s(25.0), cplx(0.8, 0.0)},
      {mmusic::range_to_delay_s(32.0), cplx(0.9, 0.0)},
  };
  auto data = mmusic::synthesize(config, target, 21);
  data = mmusic::apply_mask(data, mmusic::make_random_mask(512, 300, 9));

  const auto est = mmusic::estimate_mmusic(config, data, threshold_options());
  const int k = est.signal_dim;
  REQUIRE(k >= 1);
  CHECK(static_cast<int>(est.roots.selected.size()) == k);
  CHECK(static_cast<int>(est.roots.delays.size()) == k);
  CHECK(static_cast<int>(est.amplitudes.size()) == k);
  CHECK(static_cast<int>(est.profile.points.size()) == k);
  const double window = config.unambiguous_delay_s();
  for (const double d : est.roots.delays) {
    CHECK(d >= 0.0);
    CHECK(d < window);
  }
  CHECK(std::is_sorted(est.profile.points.begin(), est.profile.points.end(),
                       [](const mmusic::ProfilePoint& a,
                          const mmusic::ProfilePoint& b) {
                         return a.range_m < b.range_m;
                       }));
}
