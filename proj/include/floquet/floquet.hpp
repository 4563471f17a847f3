#ifndef FLOQUET_FLOQUET_HPP
#define FLOQUET_FLOQUET_HPP

#include <vector>

#include "floquet/hamiltonians.hpp"
#include "floquet/types.hpp"

namespace floq {

// Quasi-energies and Floquet modes from the truncated Floquet matrix. Mode μ
// stores Φ_n^μ as column n+K of components[μ]; quasi-energies are folded into
// (−ω_m/2, ω_m/2] and sorted ascending. Mode gauge: the largest-magnitude entry
// of Φ_0^μ is real positive (global fallback when Φ_0 is negligible).
struct FloquetModes {
  int dim = 0;
  double omega_m = 0.0;
  int kmax = 0;
  RealVector quasi_energies;
  std::vector<Matrix> components;

  Vector component(int mu, int n) const;
};

// Block (p, q) = H_{p−q} + δ_{pq}(−p)ω_m·Id with block row p = −K at the top,
// so the top-left block carries +Kω_m. K below the max drive harmonic is
// rejected (components would be dropped entirely); static h accepts K = 0.
Matrix assemble_floquet_matrix(const FourierHamiltonian& h, int kblocks);

// Eigensolve + representative selection. Exactly N eigenvalues are expected in
// the zone; surplus in-zone candidates (truncation-edge artifacts) are dropped
// by block concentration Σ_{|n| ≤ K−max(5,K/10)} ‖Φ_n‖², shortfall raises
// DegenerateSelection. Tail weight Σ_{|n| > max(K−5,0)} above 1e-10 raises
// TruncationTooSmall.
FloquetModes solve_modes(const FourierHamiltonian& h, int kblocks);

// Φ^μ(t) = Σ_n Φ_n^μ e^{−i n ω_m t}.
Vector mode_at_time(const FloquetModes& m, int mu, double t);

// Solve Σ_μ c^μ Φ^μ(0) = ψ0. SingularBasis when the t=0 mode matrix is
// rank-deficient (exact degeneracies can collapse it).
Vector initial_coefficients(const FloquetModes& m, const Vector& psi0);

}  // namespace floq

#endif
