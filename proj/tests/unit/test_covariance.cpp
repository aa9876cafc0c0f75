#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "mmusic/acf.hpp"
#include "mmusic/covariance.hpp"
#include "mmusic/errors.hpp"
#include "mmusic/rng.hpp"
#include "mmusic/signal_model.hpp"

using mmusic::cplx;

namespace {

// Reference size rule, evaluated directly from the mask.
int brute_force_size(const mmusic::AvailabilityMask& mask, int max_size) {
  const int n = mask.size();
  int size = 1;
  for (int h = 1; h < max_size; ++h) {
    if (2.0 * static_cast<double>(mmusic::count_pairs(mask, h)) <
        static_cast<double>(n - h))
      break;
    size = h + 1;
  }
  return size;
}

mmusic::AcfEstimate acf_of_mask(const mmusic::AvailabilityMask& mask,
                                int max_lag) {
  mmusic::MaskedSamples data;
  data.samples.assign(static_cast<std::size_t>(mask.size()), cplx(1.0, 0.0));
  data.mask = mask;
  return mmusic::estimate_acf(data, max_lag);
}

}  // namespace

TEST_CASE("size rule accepts every lag of a full mask") {
  const auto acf = acf_of_mask(testutil::full_mask(512), 80);
  CHECK(mmusic::select_matrix_size(acf, 64) == 64);
}

TEST_CASE("size rule stops at the first starved lag") {
  const auto acf = acf_of_mask(testutil::alternating_mask(64), 20);
  CHECK(mmusic::select_matrix_size(acf, 16) == 1);
}

TEST_CASE("size rule matches a brute-force scan on random masks") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto mask = mmusic::make_random_mask(512, 300, seed);
    const auto acf = acf_of_mask(mask, 127);
    CHECK(mmusic::select_matrix_size(acf, 128) == brute_force_size(mask, 128));
  }
}

TEST_CASE("size rule is monotone: every size below the selected one passes") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto mask = mmusic::make_random_mask(256, 230, seed);
    const auto acf = acf_of_mask(mask, 63);
    const int selected = mmusic::select_matrix_size(acf, 64);
    for (int h = 1; h < selected; ++h)
      CHECK(2 * acf.pair_counts[static_cast<std::size_t>(h)] >=
            static_cast<long long>(256 - h));
  }
}

TEST_CASE("size selection requires data and a sane cap") {
  mmusic::AcfEstimate empty;
  empty.values.assign(4, cplx(0.0, 0.0));
  empty.pair_counts.assign(4, 0);
  empty.pulse_count = 8;
  CHECK_THROWS_AS(mmusic::select_matrix_size(empty, 4), mmusic::NoDataError);

  const auto acf = acf_of_mask(testutil::full_mask(8), 4);
  CHECK_THROWS_AS(mmusic::select_matrix_size(acf, 1), mmusic::InvalidInputError);
}

TEST_CASE("fallback size uses the largest run of defined lags") {
  // 6 of 8 pulses: lags 1..5 all defined but starved below (N - h) / 2.
  mmusic::AvailabilityMask mask;
  mask.flags = {1, 1, 1, 0, 1, 1, 0, 1};
  const auto acf = acf_of_mask(mask, 7);
  const int strict = mmusic::select_matrix_size(acf, 8);
  const int fallback = mmusic::largest_defined_size(acf, 8);
  CHECK(strict < fallback);
  for (int h = 0; h < fallback; ++h) CHECK(acf.defined(h));
}

TEST_CASE("two-lag Toeplitz matrix fills by Hermitian extension") {
  const auto acf = testutil::analytic_acf({cplx(1.0, 0.0), cplx(0.0, 1.0)}, 8);
  const auto cov = mmusic::form_toeplitz(acf, 2);
  REQUIRE(cov.size() == 2);
  CHECK(cov.entries(0, 0) == cplx(1.0, 0.0));
  CHECK(cov.entries(0, 1) == cplx(0.0, 1.0));
  CHECK(cov.entries(1, 0) == cplx(0.0, -1.0));
  CHECK(cov.entries(1, 1) == cplx(1.0, 0.0));
}

TEST_CASE("constant signal gives the all-ones matrix") {
  mmusic::MaskedSamples data;
  data.samples.assign(16, cplx(1.0, 0.0));
  data.mask = testutil::full_mask(16);
  const auto cov = mmusic::form_toeplitz(mmusic::estimate_acf(data, 4), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(cov.entries(i, j) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("single-tone covariance is rank one") {
  mmusic::MaskedSamples data;
  data.samples = testutil::tone(64, 0.17);
  data.mask = testutil::full_mask(64);
  const auto cov = mmusic::form_toeplitz(mmusic::estimate_acf(data, 10), 8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(cov.entries);
  const auto lambda = solver.eigenvalues();
  const double top = lambda(lambda.size() - 1);
  CHECK(top > 1.0);
  for (int i = 0; i + 1 < lambda.size(); ++i)
    CHECK(std::abs(lambda(i)) < 1e-10 * top);
}

TEST_CASE("undefined lags make Toeplitz construction fail loudly") {
  const auto acf = acf_of_mask(testutil::alternating_mask(16), 4);
  CHECK_THROWS_AS(mmusic::form_toeplitz(acf, 2), mmusic::InsufficientDataError);
}

TEST_CASE("structural invariants hold bit-exactly on noisy gapped data") {
  mmusic::RadarConfig config;
  config.pulse_count = 128;
  config.start_frequency_hz = 0.0;
  config.frequency_step_hz = 1.0;
  config.noise_snr_db = 5.0;
  const auto data = mmusic::apply_mask(
      mmusic::synthesize(config, {{0.3, cplx(1.0, 0.5)}}, 11),
      mmusic::make_random_mask(128, 90, 2));
  const auto acf = mmusic::estimate_acf(data, 30);
  const int size = mmusic::largest_defined_size(acf, 24);
  const auto cov = mmusic::form_toeplitz(acf, size);
  for (int i = 0; i < size; ++i) {
    CHECK(cov.entries(i, i).imag() == 0.0);
    for (int j = 0; j < size; ++j) {
      CHECK(cov.entries(i, j) == std::conj(cov.entries(j, i)));
      if (i + 1 < size && j + 1 < size)
        CHECK(cov.entries(i, j) == cov.entries(i + 1, j + 1));
    }
  }
}

TEST_CASE("diagonal loading adds a real ridge") {
  const auto acf = testutil::analytic_acf({cplx(2.0, 0.0), cplx(0.5, 0.25)}, 8);
  const auto plain = mmusic::form_toeplitz(acf, 2);
  const auto loaded = mmusic::form_toeplitz(acf, 2, 0.75);
  CHECK(loaded.entries(0, 0) == cplx(2.75, 0.0));
  CHECK(loaded.entries(1, 1) == cplx(2.75, 0.0));
  CHECK(loaded.entries(0, 1) == plain.entries(0, 1));
}
