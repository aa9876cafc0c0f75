#pragma once

#include <Eigen/Dense>

#include "mmusic/acf.hpp"

namespace mmusic {

/// Hermitian-Toeplitz covariance estimate. Both structural properties hold
/// bit-exactly by construction; the matrix is NOT guaranteed positive
/// semidefinite under missing data.
struct CovarianceMatrix {
  Eigen::MatrixXcd entries;

  int size() const { return static_cast<int>(entries.rows()); }
};

/// Size rule: the largest L <= max_size such that Q(h) >= (N - h) / 2 for
/// every lag h < L; returns at least 1 (lag 0 alone). The rule can be
/// unsatisfiable beyond L = 1 for realistic masks; callers fall back via
/// largest_defined_size().
int select_matrix_size(const AcfEstimate& acf, int max_size);

/// Largest L <= max_size with every lag h < L defined (Q(h) >= 1); the
/// documented fallback when the size rule admits no L >= 2.
int largest_defined_size(const AcfEstimate& acf, int max_size);

/// entries(i, j) = c_hat(j - i) for j >= i, conj(c_hat(i - j)) below the
/// diagonal (Hermitian extension of the one-sided ACF). diagonal_loading
/// (default 0) adds a real ridge to the diagonal.
CovarianceMatrix form_toeplitz(const AcfEstimate& acf, int size,
                               double diagonal_loading = 0.0);

}  // namespace mmusic
