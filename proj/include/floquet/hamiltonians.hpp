#ifndef FLOQUET_HAMILTONIANS_HPP
#define FLOQUET_HAMILTONIANS_HPP

#include <map>
#include <variant>
#include <vector>

#include "floquet/types.hpp"

namespace floq {

// Time-periodic Hermitian Hamiltonian stored by Fourier component:
//   H(t) = Σ_n H_n e^{-i n ω_m t},  H_{-n} = H_n†  (enforced at construction).
class FourierHamiltonian {
 public:
  FourierHamiltonian(int dim, double omega_m, std::map<int, Matrix> components);

  int dim() const { return dim_; }
  double omega_m() const { return omega_m_; }
  double period() const { return two_pi / omega_m_; }
  int max_harmonic() const;
  bool has_component(int n) const { return components_.count(n) != 0; }
  const Matrix& component(int n) const;  // zero matrix for absent harmonics
  const std::map<int, Matrix>& components() const { return components_; }

  Matrix sample(double t) const;

 private:
  int dim_;
  double omega_m_;
  std::map<int, Matrix> components_;
  Matrix zero_;
};

// Extra drive term amplitude*sin(harmonic*ω_m t) along a Pauli axis. When
// `relative` is set the stored amplitude is a multiple of ε_m, resolved at build.
struct BreakingTerm {
  int harmonic = 2;
  char axis = 'z';
  double amplitude = 0.0;
  bool relative = false;
};

// H(t) = (δ/2)σ_z + (Ω/2)σ_x + ε_m sin(ω_m t + φ)σ_z  [+ breaking terms].
// Detuning sign: the +(δ/2)σ_z convention; ensemble averages are δ-symmetric.
struct PhaseModTLS {
  double omega = 0.0;      // Ω, rad/s
  double epsilon_m = 0.0;  // rad/s
  double omega_m = 0.0;    // rad/s
  double phi = 0.0;        // rad
  double delta = 0.0;      // rad/s
  std::vector<BreakingTerm> breaking;
};

// H(t) = (δ/2)σ_z + (Ω/2)σ_x + ε_m cos(ω_m t + φ)σ_y.
struct AmpModTLS {
  double omega = 0.0;
  double epsilon_m = 0.0;
  double omega_m = 0.0;
  double phi = 0.0;
  double delta = 0.0;
};

// Three-level coupling with 2π/3-stepped drive phases, basis (|-1>, |0>, |+1>):
//   H(t) = J[cos(ω_m t)|-1><+1| + cos(ω_m t + 2π/3)|+1><0| + cos(ω_m t + 4π/3)|-1><0|] + h.c.
struct ThreeLevelRotating {
  double j = 0.0;       // rad/s
  double omega_m = 0.0;
};

// First-rotating-frame three-level system with amplitude-modulated drives whose
// second-frame RWA limit is ThreeLevelRotating. Requires Ω1/2 = Ω2/2 = Δ and
// Δ an integer multiple of ω_m (joint periodicity).
struct ThreeLevelFirstFrame {
  double delta = 0.0;   // Δ, rad/s
  double omega1 = 0.0;  // Ω1, rad/s
  double omega2 = 0.0;  // Ω2, rad/s
  double j = 0.0;       // target coupling J, rad/s
  double omega_m = 0.0;
};

using DriveSpec = std::variant<PhaseModTLS, AmpModTLS, ThreeLevelRotating, ThreeLevelFirstFrame>;

FourierHamiltonian build_interaction_tls(const PhaseModTLS& p);
FourierHamiltonian build_amp_mod_tls(const AmpModTLS& p);
FourierHamiltonian build_three_level_rotating(const ThreeLevelRotating& p);
FourierHamiltonian build_three_level_first_frame(const ThreeLevelFirstFrame& p);
FourierHamiltonian build_hamiltonian(const DriveSpec& spec);

int spec_dim(const DriveSpec& spec);
double spec_omega_m(const DriveSpec& spec);

// Gaussian detuning ensemble: `count` equally spaced δ over [-span·σ, span·σ]
// with normalized Gaussian weights. Only TLS specs carry a detuning.
struct EnsembleSpec {
  double sigma = 0.0;  // rad/s
  int count = 51;
  double span = 2.0;
};

struct EnsembleMember {
  DriveSpec spec;
  double delta;
  double weight;
};

std::vector<EnsembleMember> expand_ensemble(const DriveSpec& spec, const EnsembleSpec& ens);

// Named states and operators used by the configs and tests.
Vector tls_ket0();
Vector tls_ket1();
Vector tls_plus();    // (|0> + |1>)/√2
Vector tls_plus_i();  // (|0> + i|1>)/√2

Matrix three_level_v();       // all-ones off-diagonal probe
Vector three_level_e(int k);  // its eigenbasis e1=(1,1,1)/√3, e2=(-2,1,1)/√6, e3=(0,1,-1)/√2
Matrix rotation3();           // |-1><0| + |0><+1| + |+1><-1|

// Unitary frame chain for ThreeLevelFirstFrame: maps a first-frame state at time t
// to the rotating-frame basis of ThreeLevelRotating (static-basis transform, the
// diag(e^{-i2Δt},1,e^{iΔt}) rotation, then the basis reversal).
Vector map_first_frame_state(const ThreeLevelFirstFrame& p, double t, const Vector& psi_first);

}  // namespace floq

#endif
