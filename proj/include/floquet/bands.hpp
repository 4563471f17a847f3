#ifndef FLOQUET_BANDS_HPP
#define FLOQUET_BANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "floquet/dynamics.hpp"
#include "floquet/floquet.hpp"
#include "floquet/hamiltonians.hpp"
#include "floquet/probe.hpp"
#include "floquet/types.hpp"

namespace floq {

// One spectral line of the weighted Rabi signal. Positive-frequency entries
// carry the one-sided cosine amplitude, so P(t) = a_dc + Σ Re(a e^{iωt});
// the zero-frequency entry stores the mean itself. Centerbands are pooled
// across modes and marked mu = nu = -1.
struct BandAmplitude {
  int mu = 0;
  int nu = 0;
  int n = 0;
  double frequency = 0.0;  // n ω_m + λ^μ − λ^ν, rad/s
  Cx amplitude{0.0, 0.0};
};

// V_{μ,ν}^{(n)} = Σ_p ⟨Φ_p^μ|V|Φ_{p−n}^ν⟩, the n-th Fourier coefficient of
// ⟨Φ^μ(t)|V|Φ^ν(t)⟩. Requires |n| ≤ 2K−1 (n = 0 for static K = 0 modes);
// satisfies V_{μ,ν}^{(n)} = conj(V_{ν,μ}^{(−n)}).
Cx dipole_element(const FloquetModes& m, const ProbeOperator& v, int mu, int nu, int n);

// Sidebands a = 2 c^{μ*} c^ν V_{μ,ν}^{(n)}/𝒱 for μ ≠ ν, centerbands pooled
// across μ into a^{(n)} = 2 Σ_μ |c^μ|² V_{μ,μ}^{(n)}/𝒱; entries within
// 1e-6·ω_m of zero frequency collapse into the leading DC entry. Sorted by
// frequency ascending.
std::vector<BandAmplitude> band_amplitudes(const FloquetModes& m, const Vector& coeffs,
                                           const ProbeOperator& v, int n_max);

// Coherent sum of entries whose frequencies agree within tol (rad/s); each
// pooled entry keeps the labels of its largest-magnitude member.
std::vector<BandAmplitude> pool_bands(const std::vector<BandAmplitude>& bands, double tol);

struct Spectrum {
  RealVector frequencies;  // MHz, ascending from DC
  RealVector magnitudes;   // one-sided cosine amplitudes; [0] is the DC mean
};

// One-sided DFT of a uniformly sampled trace, normalized so a bin-centered
// cosine of amplitude A reads A. Hann windowing trades amplitude accuracy at
// off-bin frequencies for leakage suppression.
Spectrum fft_spectrum(const RabiTrace& r, bool hann = false);

// Least-squares fit of DC plus cosines at the given frequencies (rad/s);
// returns the fitted one-sided amplitude per input frequency. Frequencies
// closer than a quarter DFT bin share one fitted line. Leakage-free, so it
// resolves band magnitudes far below the DFT floor of nearby large peaks.
RealVector projected_magnitudes(const RabiTrace& r, const RealVector& frequencies);

// Sweep-axis rewrite of one drive parameter. Paths: epsilon_m,
// two_eps_over_omega_m, phi, omega, delta, omega_m for the TLS drives;
// j, two_j_over_omega_m, omega_m (+ delta for the first frame) for the
// three-level drives. Unknown paths raise ConfigError.
DriveSpec apply_parameter(const DriveSpec& spec, const std::string& path, double value);

struct SweepOptions {
  std::string parameter;
  std::vector<double> values;
  Vector psi0;
  int kblocks = 0;
  double t_end = 0.0;  // seconds
  int samples = 0;
  EnsembleSpec ensemble;  // active when sigma > 0 and count > 1
  bool hann = false;
  int threads = 0;  // 0 = hardware concurrency
};

struct SpectrumMap {
  std::string parameter;
  std::vector<double> sweep_values;
  RealVector frequencies;  // MHz
  RealMatrix magnitudes;   // sweep point per row
};

// Per value: rewrite parameter, build, solve, evolve via Floquet modes,
// weighted Rabi, FFT; ensemble members are trace-averaged before the FFT.
// Rows are computed concurrently; assembly is by sweep index, so results are
// identical for any thread count. Failures rethrow with the offending sweep
// value prefixed.
SpectrumMap sweep_spectrum(const DriveSpec& base, const SweepOptions& opt,
                           const ProbeOperator& v);

// Header sweep_value,frequency_mhz,magnitude; row-major by sweep value,
// frequencies ascending, 9 significant digits.
void write_spectrum_csv(const SpectrumMap& map, std::ostream& os);

struct SusceptibilityParams {
  RealVector populations;  // stationary p_μ, nonnegative, summing to 1
  double gamma = 0.0;      // dephasing rate, rad/s, > 0
  double coupling = 1.0;   // probe coupling; scales χ globally
};

// χ_n(ω_p1) = i λ² Σ_{μ,ν,m} V_{ν,μ}^{(−n−m)} V_{μ,ν}^{(m)} (p_ν − p_μ) /
// (λ^μ − λ^ν + m ω_m − ω_p1 − iγ), with |m| and |−n−m| truncated at 2K−1.
Cx susceptibility(const FloquetModes& m, const ProbeOperator& v,
                  const SusceptibilityParams& params, int n, double omega_p1);

// Same sum over a grid of probe frequencies with the dipole table built once.
Vector susceptibility_scan(const FloquetModes& m, const ProbeOperator& v,
                           const SusceptibilityParams& params, int n,
                           const RealVector& omega_p1);

}  // namespace floq

#endif
