#ifndef FLOQUET_KERNELS_IMPL_HPP
#define FLOQUET_KERNELS_IMPL_HPP

#include "floquet/kernels.hpp"

// Per-backend entry points. The AVX2 translation unit is compiled with -mavx2
// -mfma and only ever called after a cpuid check.

#if defined(__x86_64__)
#define FLOQ_HAVE_AVX2_TU 1
#else
#define FLOQ_HAVE_AVX2_TU 0
#endif

namespace floq::kern {

namespace scalar {
void reconstruct_trace(const std::vector<Matrix>& comps, const RealVector& lambdas,
                       const Vector& coeffs, double omega_m, int kmax,
                       const std::vector<double>& times, StateTrace& out);
void dft_real(const std::vector<double>& x, int bins, std::vector<Cx>& out);
void expectation_trace(const StateTrace& states, const Matrix& w, std::vector<double>& out);
}  // namespace scalar

#if FLOQ_HAVE_AVX2_TU
namespace avx2 {
void reconstruct_trace(const std::vector<Matrix>& comps, const RealVector& lambdas,
                       const Vector& coeffs, double omega_m, int kmax,
                       const std::vector<double>& times, StateTrace& out);
void dft_real(const std::vector<double>& x, int bins, std::vector<Cx>& out);
void expectation_trace(const StateTrace& states, const Matrix& w, std::vector<double>& out);
}  // namespace avx2
#endif

}  // namespace floq::kern

#endif
