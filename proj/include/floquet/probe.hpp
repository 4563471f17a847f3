#ifndef FLOQUET_PROBE_HPP
#define FLOQUET_PROBE_HPP

#include "floquet/types.hpp"

namespace floq {

// Hermitian probe V = Σ_k 𝒱_k |k><k| with normalization 𝒱 = Σ_k |𝒱_k|.
// Weighted Rabi signals and band amplitudes are reported in units of 𝒱.
struct ProbeOperator {
  Matrix matrix;
  RealVector eigenvalues;
  Matrix eigenvectors;  // column k is |k>
  double norm = 0.0;

  explicit ProbeOperator(const Matrix& v);
  Vector eigenstate(int k) const { return eigenvectors.col(k); }
};

}  // namespace floq

#endif
