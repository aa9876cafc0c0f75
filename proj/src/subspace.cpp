#include "mmusic/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mmusic/errors.hpp"

namespace mmusic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// |re| + |im|, the norm used by LAPACK-style balancing.
double abs1(const cplx& z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Parlett-Reinsch balancing: diagonal similarity with radix-2 scale factors,
// iterated until every row/column norm pair is within a factor ~radix^2.
// Eigenvalues are unchanged; conditioning of the QR iteration improves.
void balance_in_place(Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  const double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        col += abs1(a(j, i));
        row += abs1(a(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      const double total = col + row;
      double factor = 1.0;
      double goal = row / radix;
      while (col < goal) {
        factor *= radix;
        col *= radix * radix;
      }
      goal = row * radix;
      while (col > goal) {
        factor /= radix;
        col /= (radix * radix);
      }
      if ((col + row) / factor < 0.95 * total) {
        converged = false;
        a.row(i) *= 1.0 / factor;
        a.col(i) *= factor;
      }
    }
  }
}

// Roots of the polynomial with ascending coefficients c[0] + c[1] z + ...,
// via eigenvalues of the balanced companion matrix of the monic form.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  const cplx lead = coeffs[degree];
  for (int i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -coeffs[i] / lead;
    if (i + 1 < degree) companion(i + 1, i) = 1.0;
  }
  balance_in_place(companion);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericError("companion-matrix eigendecomposition did not converge");
  std::vector<cplx> roots(degree);
  for (int i = 0; i < degree; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

double wrapped_delay_key(const cplx& z) {
  double theta = std::fmod(-std::arg(z), kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;
  return theta;
}

}  // namespace

SubspaceSplit eigendecompose(const CovarianceMatrix& matrix) {
  const int n = matrix.size();
  if (n < 1) throw InvalidInputError("covariance matrix is empty");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries);
  if (solver.info() != Eigen::Success)
    throw NumericError("covariance eigendecomposition did not converge");
  SubspaceSplit split;
  split.eigenvalues = solver.eigenvalues().reverse();
  split.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return split;
}

int estimate_order_threshold(const Eigen::VectorXd& eigenvalues_descending,
                             double threshold) {
  const int n = static_cast<int>(eigenvalues_descending.size());
  int count = 0;
  while (count < n && eigenvalues_descending(count) > threshold) ++count;
  return std::min(count, n - 1);
}

int estimate_order_aic(const Eigen::VectorXd& eigenvalues_descending,
                       long long effective_samples) {
  const int n = static_cast<int>(eigenvalues_descending.size());
  if (n < 2) throw InvalidInputError("AIC order selection needs at least 2 eigenvalues");
  if (effective_samples < n)
    throw InvalidInputError("effective sample count below matrix size");

  // Clamp to a floor relative to the largest eigenvalue so logs stay finite
  // even for numerically zero (or slightly negative) tail eigenvalues.
  const double top = std::max(eigenvalues_descending(0), 0.0);
  const double floor =
      top * 1e-12 + std::numeric_limits<double>::denorm_min();
  Eigen::VectorXd lam(n);
  for (int i = 0; i < n; ++i)
    lam(i) = std::max(eigenvalues_descending(i), floor);

  int best_k = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const int tail = n - k;
    double log_sum = 0.0;
    double sum = 0.0;
    for (int i = k; i < n; ++i) {
      log_sum += std::log(lam(i));
      sum += lam(i);
    }
    const double log_gm = log_sum / tail;
    const double log_am = std::log(sum / tail);
    const double value = -2.0 * static_cast<double>(effective_samples) * tail *
                             (log_gm - log_am) +
                         2.0 * k * (2 * n - k);
    if (value < best_value) {
      best_value = value;
      best_k = k;
    }
  }
  return best_k;
}

RootSet root_music(const SubspaceSplit& split) {
  const int L = split.size();
  if (split.signal_dim == 0) throw NoSignalError("signal_dim is zero; no scatterers to root");
  if (split.signal_dim < 0 || split.signal_dim >= L)
    throw InvalidInputError("signal_dim must satisfy 1 <= K < L");
  const int K = split.signal_dim;

  // Noise-subspace projector P = G G^H; D(z)'s coefficient of z^m is the
  // m-th superdiagonal trace of P (and the conjugate for z^{-m}), so in
  // ascending powers c[k] = d_{(L-1)-k} and the signal roots fall at
  // z = exp(-j 2 pi delta_f tau).
  const Eigen::MatrixXcd noise = split.eigenvectors.rightCols(L - K);
  const Eigen::MatrixXcd projector = noise * noise.adjoint();
  std::vector<cplx> diag_trace(L);
  for (int m = 0; m < L; ++m) {
    cplx sum = 0.0;
    for (int l = 0; l + m < L; ++l) sum += projector(l, l + m);
    diag_trace[m] = sum;
  }
  diag_trace[0] = cplx(diag_trace[0].real(), 0.0);

  const int degree = 2 * (L - 1);
  std::vector<cplx> coeffs(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    const int m = (L - 1) - k;
    coeffs[k] = m >= 0 ? diag_trace[m] : std::conj(diag_trace[-m]);
  }

  // Symmetric end-trim: a conjugate-self-inversive polynomial loses leading
  // and trailing coefficients together (a root at 0 pairs with one at inf).
  double max_abs = 0.0;
  for (const cplx& c : coeffs) max_abs = std::max(max_abs, std::abs(c));
  if (max_abs == 0.0)
    throw NumericError("noise-subspace polynomial vanished");
  std::size_t begin = 0;
  std::size_t end = coeffs.size();
  while (end - begin > 2 && std::abs(coeffs[begin]) <= 1e-14 * max_abs &&
         std::abs(coeffs[end - 1]) <= 1e-14 * max_abs) {
    ++begin;
    --end;
  }
  std::vector<cplx> trimmed(coeffs.begin() + begin, coeffs.begin() + end);
  if (trimmed.size() < 2)
    throw NumericError("noise-subspace polynomial has no roots");

  RootSet result;
  result.roots = polynomial_roots(trimmed);
  const int n_roots = static_cast<int>(result.roots.size());

  // Greedy conjugate-reciprocal pairing. Each root's partner is the
  // remaining root closest to 1/conj(z); a root essentially on the unit
  // circle may be its own partner when that residual wins, unless a
  // near-coincident twin exists (a split double root must stay one pair).
  constexpr double kCoincident = 1e-6;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> unpaired(n_roots);
  for (int i = 0; i < n_roots; ++i) unpaired[i] = i;
  while (!unpaired.empty()) {
    const int i = unpaired.front();
    unpaired.erase(unpaired.begin());
    const cplx zi = result.roots[i];
    const double mag2 = std::norm(zi);
    int best_j = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    double self_dist = std::numeric_limits<double>::infinity();
    if (mag2 > 1e-300) {
      const cplx target = zi / mag2;  // 1/conj(z)
      self_dist = std::abs(zi - target);
      for (std::size_t u = 0; u < unpaired.size(); ++u) {
        const double d = std::abs(result.roots[unpaired[u]] - target);
        if (d < best_dist) {
          best_dist = d;
          best_j = static_cast<int>(u);
        }
      }
    } else {
      // Root at the origin: partner is the largest-magnitude root left.
      for (std::size_t u = 0; u < unpaired.size(); ++u) {
        const double d = -std::abs(result.roots[unpaired[u]]);
        if (d < best_dist) {
          best_dist = d;
          best_j = static_cast<int>(u);
        }
      }
    }
    if (best_j >= 0 && (best_dist <= self_dist || best_dist <= kCoincident)) {
      pairs.emplace_back(i, unpaired[best_j]);
      unpaired.erase(unpaired.begin() + best_j);
    } else {
      pairs.emplace_back(i, i);
    }
  }

  // A true on-circle root appears as a numerically split double root; the
  // split is O(sqrt(eps)) in a rounding-dependent direction. The pair mean
  // cancels the symmetric part and Newton on D' (which has a simple root
  // where D has the double root) removes the eigensolver's asymmetric
  // residual. Both members are rewritten so selected stays within roots.
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    const cplx za = result.roots[a];
    const cplx zb = result.roots[b];
    if (std::abs(za - zb) > kCoincident) continue;
    const cplx mean = 0.5 * (za + zb);
    cplx z = mean;
    for (int iter = 0; iter < 3; ++iter) {
      cplx d0 = 0.0;  // D(z)
      cplx d1 = 0.0;  // D'(z)
      cplx d2 = 0.0;  // D''(z)/2 until doubled below
      for (int k = static_cast<int>(trimmed.size()) - 1; k >= 0; --k) {
        d2 = d2 * z + d1;
        d1 = d1 * z + d0;
        d0 = d0 * z + trimmed[k];
      }
      d2 *= 2.0;
      if (abs1(d2) == 0.0) break;
      const cplx step = d1 / d2;
      if (!(std::abs(step) <= 1e-5)) break;
      z -= step;
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        std::abs(z - mean) > 1e-5)
      z = mean;
    result.roots[a] = z;
    result.roots[b] = z;
  }

  // One candidate per pair: the member inside (or within 1e-8 of) the unit
  // circle that minimizes 1 - |z|, i.e. sits closest to the circle.
  struct Candidate {
    cplx z;
    double circle_dist;
    double angle_mag;
  };
  std::vector<Candidate> candidates;
  for (const auto& [a, b] : pairs) {
    int pick = -1;
    double pick_dist = std::numeric_limits<double>::infinity();
    for (const int idx : {a, b}) {
      const double mag = std::abs(result.roots[idx]);
      if (mag > 1.0 + 1e-8) continue;
      const double dist = 1.0 - mag;
      if (dist < pick_dist) {
        pick_dist = dist;
        pick = idx;
      }
      if (a == b) break;
    }
    if (pick >= 0)
      candidates.push_back(
          {result.roots[pick], pick_dist, std::abs(std::arg(result.roots[pick]))});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& lhs, const Candidate& rhs) {
                     if (lhs.circle_dist != rhs.circle_dist)
                       return lhs.circle_dist < rhs.circle_dist;
                     return lhs.angle_mag < rhs.angle_mag;
                   });
  if (static_cast<int>(candidates.size()) < K)
    throw NumericError("fewer unit-circle root candidates than signal_dim");
  candidates.resize(K);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& lhs, const Candidate& rhs) {
                     return wrapped_delay_key(lhs.z) < wrapped_delay_key(rhs.z);
                   });
  result.selected.reserve(K);
  for (const Candidate& c : candidates) result.selected.push_back(c.z);
  return result;
}

std::vector<double> roots_to_delays(const std::vector<cplx>& selected,
                                    double frequency_step_hz) {
  if (selected.empty()) throw InvalidInputError("no roots to convert");
  if (!(frequency_step_hz > 0.0))
    throw InvalidInputError("frequency step must be positive");
  std::vector<double> delays;
  delays.reserve(selected.size());
  for (const cplx& z : selected)
    delays.push_back(wrapped_delay_key(z) / (kTwoPi * frequency_step_hz));
  return delays;
}

}  // namespace mmusic
