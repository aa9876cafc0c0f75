#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mmusic/covariance.hpp"
#include "mmusic/types.hpp"

namespace mmusic {

/// Full eigensystem of the covariance matrix, eigenvalues descending.
/// signal_dim (K_hat) is -1 until an order selector has been applied.
struct SubspaceSplit {
  Eigen::VectorXd eigenvalues;    // lambda_1 >= ... >= lambda_L
  Eigen::MatrixXcd eigenvectors;  // columns aligned with eigenvalues
  int signal_dim = -1;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// All roots of the noise-subspace polynomial plus the subset selected as
/// scatterer roots (one per conjugate-reciprocal pair, closest to the unit
/// circle, ordered by ascending delay).
struct RootSet {
  std::vector<cplx> roots;
  std::vector<cplx> selected;
  std::vector<double> delays;  // filled by roots_to_delays once delta_f is known
};

/// Hermitian eigendecomposition sorted by descending eigenvalue.
SubspaceSplit eigendecompose(const CovarianceMatrix& matrix);

/// K_hat = number of eigenvalues strictly greater than `threshold`,
/// capped at L - 1 so a noise subspace always remains.
int estimate_order_threshold(const Eigen::VectorXd& eigenvalues_descending,
                             double threshold);

/// Information-theoretic order selection on the eigenvalue tail:
///   AIC(k) = -2 n_e (L - k) log(gm(tail) / am(tail)) + 2 k (2L - k),
/// minimized over k in [0, L-1], with gm/am the geometric/arithmetic mean
/// of lambda_{k+1..L}. Inputs are defensively clamped to a small positive
/// floor (1e-12 * lambda_1) before taking logarithms.
int estimate_order_aic(const Eigen::VectorXd& eigenvalues_descending,
                       long long effective_samples);

/// Root-MUSIC: forms D(z) from the noise-subspace projector (coefficient
/// of z^k is the (L-1-k)-th superdiagonal trace of G G^H, so the signal
/// roots fall at exp(-j 2 pi delta_f tau)), roots it via a balanced
/// companion matrix, pairs conjugate-reciprocal partners, and selects one
/// root per pair with |z| <= 1 minimizing 1 - |z| (ties: smaller |arg z|).
/// Numerically split double roots on the unit circle are consolidated to
/// their pair mean, which restores the analytic root location.
RootSet root_music(const SubspaceSplit& split);

/// tau = mod(-arg(z), 2 pi) / (2 pi delta_f), mapped into [0, 1/delta_f).
std::vector<double> roots_to_delays(const std::vector<cplx>& selected,
                                    double frequency_step_hz);

}  // namespace mmusic
