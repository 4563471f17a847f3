#include "floquet/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "floquet/errors.hpp"
#include "kernels_impl.hpp"

namespace floq::kern {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("FLOQUET_BANDS_KERNELS");
  if (env != nullptr && std::strlen(env) > 0 && std::strcmp(env, "auto") != 0) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!cpu_has_avx2()) throw InvalidParameter("FLOQUET_BANDS_KERNELS=avx2: not supported here");
      return Backend::avx2;
    }
    throw InvalidParameter(std::string("unknown FLOQUET_BANDS_KERNELS value: ") + env);
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

bool backend_supported(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw InvalidParameter(std::string(backend_name(b)) + " kernels not supported on this host");
  backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::scalar ? "scalar" : "avx2"; }

namespace scalar {

void reconstruct_trace(const std::vector<Matrix>& comps, const RealVector& lambdas,
                       const Vector& coeffs, double omega_m, int kmax,
                       const std::vector<double>& times, StateTrace& out) {
  const int dim = comps.empty() ? 0 : static_cast<int>(comps[0].rows());
  const int nt = static_cast<int>(times.size());
  out.resize(dim, nt);
  const int ncols = 2 * kmax + 1;
  for (size_t mu = 0; mu < comps.size(); ++mu) {
    const Matrix& c = comps[mu];
    for (int t = 0; t < nt; ++t) {
      const double theta = omega_m * times[t];
      // z runs e^{+iKθ} -> e^{-iKθ} while n runs -K..K; w = e^{-iθ}.
      const Cx w(std::cos(theta), -std::sin(theta));
      Cx z(std::cos(kmax * theta), std::sin(kmax * theta));
      Vector acc = Vector::Zero(dim);
      for (int col = 0; col < ncols; ++col) {
        for (int i = 0; i < dim; ++i) acc(i) += c(i, col) * z;
        z *= w;
      }
      const double phase = lambdas(static_cast<Eigen::Index>(mu)) * times[t];
      const Cx f = coeffs(static_cast<Eigen::Index>(mu)) * Cx(std::cos(phase), -std::sin(phase));
      for (int i = 0; i < dim; ++i) {
        const Cx v = f * acc(i);
        out.re[static_cast<size_t>(i) * nt + t] += v.real();
        out.im[static_cast<size_t>(i) * nt + t] += v.imag();
      }
    }
  }
}

void dft_real(const std::vector<double>& x, int bins, std::vector<Cx>& out) {
  const int n = static_cast<int>(x.size());
  out.assign(bins, Cx(0.0, 0.0));
  for (int k = 0; k < bins; ++k) {
    const double step = two_pi * k / n;
    const double cs = std::cos(step), sn = std::sin(step);
    double c = 1.0, s = 0.0;  // (c, s) = (cos θ, sin θ), θ = step * t
    double acc_re = 0.0, acc_im = 0.0;
    for (int t = 0; t < n; ++t) {
      acc_re += x[t] * c;
      acc_im -= x[t] * s;
      const double cn = c * cs - s * sn;
      s = c * sn + s * cs;
      c = cn;
    }
    out[k] = Cx(acc_re, acc_im);
  }
}

void expectation_trace(const StateTrace& states, const Matrix& w, std::vector<double>& out) {
  const int dim = states.dim;
  const int nt = states.samples;
  out.assign(nt, 0.0);
  for (int i = 0; i < dim; ++i) {
    const double wii = w(i, i).real();
    const double* ar = states.re.data() + static_cast<size_t>(i) * nt;
    const double* ai = states.im.data() + static_cast<size_t>(i) * nt;
    for (int t = 0; t < nt; ++t) out[t] += wii * (ar[t] * ar[t] + ai[t] * ai[t]);
    for (int j = i + 1; j < dim; ++j) {
      const double u = w(i, j).real(), v = w(i, j).imag();
      if (u == 0.0 && v == 0.0) continue;
      const double* br = states.re.data() + static_cast<size_t>(j) * nt;
      const double* bi = states.im.data() + static_cast<size_t>(j) * nt;
      for (int t = 0; t < nt; ++t)
        out[t] += 2.0 * (u * (ar[t] * br[t] + ai[t] * bi[t]) - v * (ar[t] * bi[t] - ai[t] * br[t]));
    }
  }
}

}  // namespace scalar

void reconstruct_trace(const std::vector<Matrix>& comps, const RealVector& lambdas,
                       const Vector& coeffs, double omega_m, int kmax,
                       const std::vector<double>& times, StateTrace& out) {
#if FLOQ_HAVE_AVX2_TU
  if (active_backend() == Backend::avx2) {
    avx2::reconstruct_trace(comps, lambdas, coeffs, omega_m, kmax, times, out);
    return;
  }
#endif
  scalar::reconstruct_trace(comps, lambdas, coeffs, omega_m, kmax, times, out);
}

void dft_real(const std::vector<double>& x, int bins, std::vector<Cx>& out) {
#if FLOQ_HAVE_AVX2_TU
  if (active_backend() == Backend::avx2) {
    avx2::dft_real(x, bins, out);
    return;
  }
#endif
  scalar::dft_real(x, bins, out);
}

void expectation_trace(const StateTrace& states, const Matrix& w, std::vector<double>& out) {
#if FLOQ_HAVE_AVX2_TU
  if (active_backend() == Backend::avx2) {
    avx2::expectation_trace(states, w, out);
    return;
  }
#endif
  scalar::expectation_trace(states, w, out);
}

}  // namespace floq::kern
