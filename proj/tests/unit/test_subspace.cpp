#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "mmusic/covariance.hpp"
#include "mmusic/errors.hpp"
#include "mmusic/rng.hpp"
#include "mmusic/signal_model.hpp"
#include "mmusic/subspace.hpp"

using mmusic::cplx;

namespace {

mmusic::CovarianceMatrix matrix_from(const Eigen::MatrixXcd& entries) {
  mmusic::CovarianceMatrix cov;
  cov.entries = entries;
  return cov;
}

// Covariance of a unit-amplitude multi-tone process, built from the
// analytic ACF rather than data, so subspace facts are exact.
mmusic::CovarianceMatrix tone_covariance(const std::vector<double>& nus, int size) {
  return mmusic::form_toeplitz(
      testutil::analytic_acf(testutil::tone_acf(nus, size - 1), 4 * size), size);
}

// Frozen analytic roots exp(-j 2 pi nu).
const cplx kRootNu01(0.80901699437494745, -0.58778525229247314);
const cplx kRootNu03(-0.30901699437494742, -0.95105651629515353);

double min_distance(const std::vector<cplx>& values, const cplx& target) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& v : values) best = std::min(best, std::abs(v - target));
  return best;
}

}  // namespace

TEST_CASE("identity matrix decomposes into unit eigenvalues") {
  const auto split =
      mmusic::eigendecompose(matrix_from(Eigen::MatrixXcd::Identity(4, 4)));
  REQUIRE(split.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(split.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(split.signal_dim == -1);
}

TEST_CASE("rank-one outer product has one eigenvalue equal to its trace") {
  const int L = 6;
  Eigen::VectorXcd a(L);
  for (int l = 0; l < L; ++l)
    a(l) = std::polar(1.0, 0.3 * l * l);  // unit-modulus entries, ||a||^2 = L
  const auto split = mmusic::eigendecompose(matrix_from(a * a.adjoint()));
  CHECK(split.eigenvalues(0) == doctest::Approx(static_cast<double>(L)).epsilon(1e-12));
  for (int i = 1; i < L; ++i) CHECK(std::abs(split.eigenvalues(i)) < 1e-12);
}

TEST_CASE("two-tone covariance has exactly two nonzero eigenvalues") {
  const auto split = mmusic::eigendecompose(tone_covariance({0.1, 0.3}, 8));
  const double top = split.eigenvalues(0);
  CHECK(split.eigenvalues(1) > 1e-10 * top);
  for (int i = 2; i < 8; ++i) CHECK(std::abs(split.eigenvalues(i)) < 1e-10 * top);
}

TEST_CASE("eigenpairs satisfy orthonormality and residual bounds") {
  mmusic::RadarConfig config;
  config.pulse_count = 96;
  config.start_frequency_hz = 0.0;
  config.frequency_step_hz = 1.0;
  config.noise_snr_db = 8.0;
  const auto data = mmusic::apply_mask(
      mmusic::synthesize(config, {{0.22, cplx(1.0, 0.0)}, {0.41, cplx(0.0, 0.7)}}, 4),
      mmusic::make_random_mask(96, 70, 6));
  const auto acf = mmusic::estimate_acf(data, 20);
  const auto cov = mmusic::form_toeplitz(acf, mmusic::largest_defined_size(acf, 16));
  const auto split = mmusic::eigendecompose(cov);
  const int L = split.size();

  const Eigen::MatrixXcd gram =
      split.eigenvectors.adjoint() * split.eigenvectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(L, L)).cwiseAbs().maxCoeff() < 1e-10);

  const double scale = cov.entries.norm();
  for (int i = 0; i < L; ++i) {
    const Eigen::VectorXcd residual =
        cov.entries * split.eigenvectors.col(i) -
        split.eigenvalues(i) * split.eigenvectors.col(i);
    CHECK(residual.norm() < 1e-8 * scale);
  }
  for (int i = 1; i < L; ++i) CHECK(split.eigenvalues(i - 1) >= split.eigenvalues(i));
}

TEST_CASE("threshold order selection counts strict exceedances") {
  Eigen::VectorXd lam(4);
  lam << 10.0, 9.0, 1.0, 0.5;
  CHECK(mmusic::estimate_order_threshold(lam, 5.0) == 2);
  CHECK(mmusic::estimate_order_threshold(lam, 100.0) == 0);
  CHECK(mmusic::estimate_order_threshold(lam, 0.1) == 3);  // capped at L - 1
  CHECK(mmusic::estimate_order_threshold(lam, 10.0) == 0);  // strict comparison
  CHECK(mmusic::estimate_order_threshold(lam, 9.0) == 1);
}

TEST_CASE("threshold between adjacent eigenvalues recovers the split point") {
  mmusic::Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const int L = 4 + static_cast<int>(rng.below(8));
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(L - 1)));
    Eigen::VectorXd lam(L);
    for (int i = 0; i < L; ++i)
      lam(i) = i < k ? 10.0 + rng.uniform01() : rng.uniform01();
    std::sort(lam.data(), lam.data() + L, std::greater<double>());
    const double threshold = 0.5 * (lam(k - 1) + lam(k));
    CHECK(mmusic::estimate_order_threshold(lam, threshold) == k);
  }
}

TEST_CASE("AIC matches a brute-force evaluation of its objective") {
  const auto reference = [](const Eigen::VectorXd& lam, long long n_e) {
    const int L = static_cast<int>(lam.size());
    const double floor = std::max(lam(0), 0.0) * 1e-12 +
                         std::numeric_limits<double>::denorm_min();
    int best = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int k = 0; k < L; ++k) {
      double gm = 0.0, am = 0.0;
      for (int i = k; i < L; ++i) {
        gm += std::log(std::max(lam(i), floor));
        am += std::max(lam(i), floor);
      }
      const int tail = L - k;
      const double aic =
          -2.0 * n_e * tail * (gm / tail - std::log(am / tail)) +
          2.0 * k * (2 * L - k);
      if (aic < best_aic) {
        best_aic = aic;
        best = k;
      }
    }
    return best;
  };

  Eigen::VectorXd two_strong(5);
  two_strong << 10.0, 8.0, 1e-10, 1e-10, 1e-10;
  CHECK(mmusic::estimate_order_aic(two_strong, 100) == 2);
  CHECK(reference(two_strong, 100) == 2);

  Eigen::VectorXd one_strong(4);
  one_strong << 100.0, 1.0, 1.0, 1.0;
  CHECK(mmusic::estimate_order_aic(one_strong, 500) == 1);
  CHECK(reference(one_strong, 500) == 1);

  mmusic::Rng rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const int L = 3 + static_cast<int>(rng.below(10));
    Eigen::VectorXd lam(L);
    for (int i = 0; i < L; ++i) lam(i) = std::exp(3.0 * rng.uniform01());
    std::sort(lam.data(), lam.data() + L, std::greater<double>());
    const long long n_e = L + static_cast<long long>(rng.below(1000));
    CHECK(mmusic::estimate_order_aic(lam, n_e) == reference(lam, n_e));
  }
}

TEST_CASE("AIC on pure noise usually selects order zero") {
  int zeros = 0;
  const int seeds = 21;
  for (int s = 0; s < seeds; ++s) {
    mmusic::Rng rng(500 + static_cast<std::uint64_t>(s));
    mmusic::MaskedSamples data;
    const int n = 1000;
    for (int i = 0; i < n; ++i) data.samples.push_back(rng.complex_gaussian(1.0));
    data.mask = testutil::full_mask(n);
    const auto acf = mmusic::estimate_acf(data, 7);
    const auto split = mmusic::eigendecompose(mmusic::form_toeplitz(acf, 8));
    if (mmusic::estimate_order_aic(split.eigenvalues, n) == 0) ++zeros;
  }
  CHECK(zeros > seeds / 2);
}

TEST_CASE("AIC rejects degenerate inputs") {
  Eigen::VectorXd single(1);
  single << 1.0;
  CHECK_THROWS_AS(mmusic::estimate_order_aic(single, 10), mmusic::InvalidInputError);
  Eigen::VectorXd lam(4);
  lam << 4.0, 3.0, 2.0, 1.0;
  CHECK_THROWS_AS(mmusic::estimate_order_aic(lam, 3), mmusic::InvalidInputError);
}

TEST_CASE("single tone root lands on the analytic unit-circle location") {
  auto split = mmusic::eigendecompose(tone_covariance({0.1}, 4));
  split.signal_dim = 1;
  const auto roots = mmusic::root_music(split);
  REQUIRE(roots.selected.size() == 1);
  CHECK(std::abs(roots.selected[0] - kRootNu01) < 1e-9);
  CHECK(static_cast<int>(roots.roots.size()) >= 1);
}

TEST_CASE("two tones are both recovered to 1e-9") {
  auto split = mmusic::eigendecompose(tone_covariance({0.1, 0.3}, 8));
  split.signal_dim = 2;
  const auto roots = mmusic::root_music(split);
  REQUIRE(roots.selected.size() == 2);
  CHECK(min_distance(roots.selected, kRootNu01) < 1e-9);
  CHECK(min_distance(roots.selected, kRootNu03) < 1e-9);
}

TEST_CASE("rooting requires a nonempty signal subspace") {
  auto split = mmusic::eigendecompose(tone_covariance({0.1}, 4));
  split.signal_dim = 0;
  CHECK_THROWS_AS(mmusic::root_music(split), mmusic::NoSignalError);
  split.signal_dim = 4;
  CHECK_THROWS_AS(mmusic::root_music(split), mmusic::InvalidInputError);
}

TEST_CASE("selected roots live in the returned root multiset") {
  auto split = mmusic::eigendecompose(tone_covariance({0.05, 0.22, 0.4}, 10));
  split.signal_dim = 3;
  const auto roots = mmusic::root_music(split);
  for (const cplx& z : roots.selected) CHECK(min_distance(roots.roots, z) == 0.0);
}

TEST_CASE("root multiset is conjugate-reciprocal symmetric") {
  mmusic::RadarConfig config;
  config.pulse_count = 128;
  config.start_frequency_hz = 0.0;
  config.frequency_step_hz = 1.0;
  config.noise_snr_db = 12.0;
  const auto data = mmusic::synthesize(
      config, {{0.15, cplx(1.0, 0.0)}, {0.35, cplx(0.8, 0.2)}}, 21);
  const auto acf = mmusic::estimate_acf(data, 12);
  auto split = mmusic::eigendecompose(mmusic::form_toeplitz(acf, 10));
  split.signal_dim = 2;
  const auto roots = mmusic::root_music(split);
  for (const cplx& z : roots.roots) {
    const cplx partner = z / std::norm(z);  // 1/conj(z)
    CHECK(min_distance(roots.roots, partner) < 1e-8);
  }
  // One root per pair: no two selected roots are conjugate-reciprocal
  // partners of each other while sitting measurably off the circle.
  for (std::size_t i = 0; i < roots.selected.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.selected.size(); ++j) {
      const cplx zi = roots.selected[i];
      const cplx zj = roots.selected[j];
      const bool reciprocal_pairing =
          std::abs(zi * std::conj(zj) - cplx(1.0, 0.0)) < 1e-8 &&
          std::abs(zi - zj) > 1e-6;
      CHECK_FALSE(reciprocal_pairing);
    }
  }
}

TEST_CASE("polynomial coefficients are invariant to eigenvector phase") {
  auto split = mmusic::eigendecompose(tone_covariance({0.1, 0.3}, 8));
  split.signal_dim = 2;
  const auto baseline = mmusic::root_music(split);

  auto rotated = split;
  for (int k = 2; k < 8; ++k)
    rotated.eigenvectors.col(k) *= std::polar(1.0, 0.7 + 0.3 * k);
  const auto perturbed = mmusic::root_music(rotated);

  REQUIRE(baseline.selected.size() == perturbed.selected.size());
  for (std::size_t i = 0; i < baseline.selected.size(); ++i)
    CHECK(std::abs(baseline.selected[i] - perturbed.selected[i]) < 1e-12);
}

TEST_CASE("delay conversion wraps angles into the unambiguous window") {
  const std::vector<cplx> unity{cplx(1.0, 0.0)};
  CHECK(mmusic::roots_to_delays(unity, 5.0)[0] == 0.0);

  const std::vector<cplx> half{cplx(-1.0, 0.0)};
  const double tau = mmusic::roots_to_delays(half, 1.875e6)[0];
  CHECK(tau == doctest::Approx(1.0 / (2.0 * 1.875e6)).epsilon(1e-12));
  CHECK(mmusic::delay_to_range_m(tau) ==
        doctest::Approx(299792458.0 / 7.5e6).epsilon(1e-12));

  const std::vector<cplx> quarter{cplx(0.0, -1.0)};  // exp(-j 2 pi 0.25)
  CHECK(mmusic::roots_to_delays(quarter, 1.0)[0] ==
        doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(mmusic::roots_to_delays({}, 1.0), mmusic::InvalidInputError);
  CHECK_THROWS_AS(mmusic::roots_to_delays(unity, 0.0), mmusic::InvalidInputError);
  for (const double tau_any :
       mmusic::roots_to_delays({cplx(0.3, 0.4), cplx(-0.9, 0.1)}, 2.0)) {
    CHECK(tau_any >= 0.0);
    CHECK(tau_any < 0.5);
  }
}
