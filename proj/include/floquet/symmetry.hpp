#ifndef FLOQUET_SYMMETRY_HPP
#define FLOQUET_SYMMETRY_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "floquet/floquet.hpp"
#include "floquet/hamiltonians.hpp"
#include "floquet/probe.hpp"
#include "floquet/types.hpp"

namespace floq {

// Candidate dynamical symmetry S·H̃(β t + t_s T)·S† = α·H(t) with H̃ = conj(H)
// when `conjugates` is set (particle-hole family). S must be unitary within
// 1e-12; conjugating candidates additionally need S·conj(S) = ±Identity.
// `approximate` marks symmetries that only hold in a limit; rules derived from
// them carry a validity caveat instead of being presented as exact.
struct SymmetryDescriptor {
  std::string name;
  Matrix s;
  int alpha = 1;
  int beta = 1;
  double t_s = 0.0;  // shift as a fraction of the period, in [0, 1)
  bool conjugates = false;
  bool approximate = false;
};

// Phases from |Φ^{μ'}(t)⟩ = π_μ S C[Φ^μ(t + t_s T)] where C conjugates for
// particle-hole candidates; partner[μ] = μ'. For a symmetry of finite order q,
// π_μ = e^{i 2π m_μ / q} with m_μ stored in m_labels.
struct SymmetryPhases {
  Vector pi;
  std::vector<int> m_labels;
  std::vector<int> partner;
  int q = 1;
};

struct BandVerdict {
  std::string band_class;  // "centerband" (pooled, mu = nu = -1) | "sideband"
  int mu = -1;
  int nu = -1;
  int n = 0;
  double frequency = 0.0;  // rad/s
  std::string verdict;     // visible | spDS | spDB | accidental-dark |
                           // siT-destructive | constructive
  std::string mechanism;   // symmetry and factor that forced the verdict
  Cx factor{1.0, 0.0};
};

struct SelectionRuleReport {
  std::vector<BandVerdict> bands;
  std::vector<std::string> notes;  // probes a listed symmetry does not cover
};

// Max over a 64-point period grid of the spectral norm of
// S·H̃(β t + t_s T)·S† − α·H(t). Zero within 1e-10 declares the symmetry held.
double verify_symmetry(const FourierHamiltonian& h, const SymmetryDescriptor& s);

// Match S C[Φ^μ(t + t_s T)] against the solved modes over a period grid and
// extract π_μ, its q-th-root label and the partner permutation. Requires
// β = +1. NoMatchingMode when the best overlap stays below 1 − 1e-3 or the
// matched phase is unstable; AmbiguousAtDegeneracy inside the gray zone near
// quasi-energy crossings.
SymmetryPhases mode_symmetry_phases(const FloquetModes& m, const SymmetryDescriptor& s, int q);

// Selection rules for every band with |n| ≤ n_max from the listed symmetries:
// q-fold factors Σ_j (π_μ π_ν* e^{−i2πn/q} α_V)^j for rotations, self-linked
// band and centerband-interference rules for particle-hole candidates, and the
// combined two-particle-hole sideband interference at quasi-energy degeneracy.
// Probes a symmetry maps to no scalar multiple of itself contribute no rule
// and are recorded in notes.
SelectionRuleReport predict_selection_rules(
    const FloquetModes& m,
    const std::vector<std::pair<SymmetryDescriptor, SymmetryPhases>>& symmetries,
    const ProbeOperator& v, const Vector& coeffs, int n_max);

// Golden-section minimizer of the smallest quasi-energy gap over one drive
// parameter, to relative tolerance 1e-5. kblocks = 0 escalates the truncation
// until mode tails converge. NoMinimumInBracket when the gap has no interior
// minimum below both bracket endpoints.
double locate_degeneracy(const DriveSpec& spec, const std::string& path, double lo, double hi,
                         int kblocks = 0);

// Coherent sum of the two degenerate sideband amplitudes of a two-mode system:
// "destructive" when |sum| < 1e-6·max(|terms|), "constructive" when
// |sum| > 1.9·max(|terms|), otherwise "neither". NotDegenerate unless
// |λ^+ − λ^−| < 1e-4·ω_m.
std::string interference_at_degeneracy(const FloquetModes& m, const Vector& coeffs,
                                       const ProbeOperator& v, int n);

// One JSON object per band: class, mu, nu, n, frequency_mhz, verdict,
// mechanism, factor_re, factor_im.
void write_rules_ndjson(const SelectionRuleReport& report, std::ostream& os);

}  // namespace floq

#endif
