#ifndef FLOQUET_KERNELS_HPP
#define FLOQUET_KERNELS_HPP

#include <vector>

#include "floquet/types.hpp"

// Data-parallel inner loops behind the trace/spectrum machinery. Every kernel has
// a scalar reference implementation and an AVX2 variant; the active one is chosen
// at runtime (cpuid, overridable via FLOQUET_BANDS_KERNELS=scalar|avx2|auto or
// set_backend). Variants are equivalence-tested against each other.

namespace floq::kern {

enum class Backend { scalar, avx2 };

bool backend_supported(Backend b);
Backend active_backend();
void set_backend(Backend b);  // InvalidParameter if unsupported on this host
const char* backend_name(Backend b);

// Complex state samples over a time grid, split re/im, component-major:
// re[i * samples + t] is Re<i|ψ(t_t)>.
struct StateTrace {
  int dim = 0;
  int samples = 0;
  std::vector<double> re, im;

  void resize(int d, int n) {
    dim = d;
    samples = n;
    re.assign(static_cast<size_t>(d) * n, 0.0);
    im.assign(static_cast<size_t>(d) * n, 0.0);
  }
  Vector state(int t) const {
    Vector v(dim);
    for (int i = 0; i < dim; ++i)
      v(i) = Cx(re[static_cast<size_t>(i) * samples + t], im[static_cast<size_t>(i) * samples + t]);
    return v;
  }
};

// out state at each time: Σ_μ coeffs[μ] e^{-iλ_μ t} Σ_n comps[μ].col(n+kmax) e^{-i n ω_m t}.
// comps[μ] is dim x (2*kmax+1).
void reconstruct_trace(const std::vector<Matrix>& comps, const RealVector& lambdas,
                       const Vector& coeffs, double omega_m, int kmax,
                       const std::vector<double>& times, StateTrace& out);

// One-sided DFT of a real series: out[k] = Σ_t x[t] e^{-2πi k t / x.size()}, k < bins.
void dft_real(const std::vector<double>& x, int bins, std::vector<Cx>& out);

// out[t] = ψ_t† W ψ_t for Hermitian W (real output).
void expectation_trace(const StateTrace& states, const Matrix& w, std::vector<double>& out);

}  // namespace floq::kern

#endif
