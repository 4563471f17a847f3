#ifndef FLOQUET_DYNAMICS_HPP
#define FLOQUET_DYNAMICS_HPP

#include <string>
#include <vector>

#include "floquet/floquet.hpp"
#include "floquet/hamiltonians.hpp"
#include "floquet/kernels.hpp"
#include "floquet/probe.hpp"
#include "floquet/types.hpp"

namespace floq {

struct EvolutionTrace {
  std::vector<double> times;
  kern::StateTrace states;
  std::string method;  // "floquet" | "trotter"
  double dt = 0.0;

  Vector state(int t) const { return states.state(t); }
};

struct RabiTrace {
  std::vector<double> times;
  std::vector<double> values;
};

// n equally spaced samples covering [0, t_end].
std::vector<double> sample_times(double t_end, int n);

// Piecewise-constant propagation with exp(−i H(t_mid) dt) per step; dt must
// divide the sampling interval. StepTooLarge when dt·(‖H_0‖ + Σ_{n>0} 2‖H_n‖)
// exceeds 0.1.
EvolutionTrace trotter_evolve(const FourierHamiltonian& h, const Vector& psi0, double dt,
                              double t_end, int n_samples);

// |Ψ(t)⟩ = Σ_μ c^μ e^{−iλ^μ t} Φ^μ(t); exact at arbitrary times.
EvolutionTrace floquet_evolve(const FloquetModes& m, const Vector& coeffs,
                              const std::vector<double>& times);

// P_{|k⟩}(t) = |⟨k|Ψ(t)⟩|².
RabiTrace projection_trace(const EvolutionTrace& e, const Vector& k);

// P(t) = Σ_k (𝒱_k/𝒱) P_{|k⟩}(t) = ⟨Ψ(t)|V|Ψ(t)⟩/𝒱.
RabiTrace weighted_rabi(const EvolutionTrace& e, const ProbeOperator& v);

}  // namespace floq

#endif
