#include "mmusic/covariance.hpp"

#include <string>

#include "mmusic/errors.hpp"

namespace mmusic {

int select_matrix_size(const AcfEstimate& acf, int max_size) {
  if (max_size < 2)
    throw InvalidInputError("select_matrix_size: max_size must be >= 2");
  if (acf.pair_counts.empty() || acf.pair_counts[0] <= 0)
    throw NoDataError("select_matrix_size: no valid samples (Q(0) = 0)");

  const int n = acf.pulse_count;
  const int limit = std::min(max_size, acf.max_lag() + 1);
  int size = 1;  // lag 0 qualifies: Q(0) = A >= 1 was checked above
  for (int h = 1; h < limit; ++h) {
    // Q(h) >= (N - h) / 2, evaluated without integer truncation.
    if (2 * acf.pair_counts[static_cast<std::size_t>(h)] <
        static_cast<long long>(n - h))
      break;
    size = h + 1;
  }
  return size;
}

int largest_defined_size(const AcfEstimate& acf, int max_size) {
  if (max_size < 1)
    throw InvalidInputError("largest_defined_size: max_size must be >= 1");
  if (acf.pair_counts.empty() || acf.pair_counts[0] <= 0)
    throw NoDataError("largest_defined_size: no valid samples (Q(0) = 0)");
  const int limit = std::min(max_size, acf.max_lag() + 1);
  int size = 1;
  for (int h = 1; h < limit; ++h) {
    if (!acf.defined(h)) break;
    size = h + 1;
  }
  return size;
}

CovarianceMatrix form_toeplitz(const AcfEstimate& acf, int size,
                               double diagonal_loading) {
  if (size < 1 || size > acf.max_lag() + 1)
    throw InvalidInputError("form_toeplitz: size " + std::to_string(size) +
                            " outside [1, max_lag + 1]");
  for (int h = 0; h < size; ++h)
    if (!acf.defined(h))
      throw InsufficientDataError("form_toeplitz: lag " + std::to_string(h) +
                                  " has no valid sample pairs");

  CovarianceMatrix cov;
  cov.entries.resize(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      const cplx value = acf.values[static_cast<std::size_t>(j - i)];
      cov.entries(i, j) = value;
      cov.entries(j, i) = std::conj(value);
    }
  }
  for (int i = 0; i < size; ++i) {
    // Diagonal entries are c_hat(0), real by construction.
    cov.entries(i, i) = cplx{acf.values[0].real() + diagonal_loading, 0.0};
  }
  return cov;
}

}  // namespace mmusic
