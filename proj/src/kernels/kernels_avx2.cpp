#include "kernels_impl.hpp"

#if FLOQ_HAVE_AVX2_TU

#include <immintrin.h>

#include <cmath>

// 4 time samples per iteration; complex values kept as separate re/im registers.
// Falls back to the scalar kernel for dims beyond the stack accumulator cap.

namespace floq::kern::avx2 {

namespace {

constexpr int kMaxDim = 16;

inline __m256d mul_add(__m256d a, __m256d b, __m256d c) { return _mm256_fmadd_pd(a, b, c); }

}  // namespace

void reconstruct_trace(const std::vector<Matrix>& comps, const RealVector& lambdas,
                       const Vector& coeffs, double omega_m, int kmax,
                       const std::vector<double>& times, StateTrace& out) {
  const int dim = comps.empty() ? 0 : static_cast<int>(comps[0].rows());
  if (dim > kMaxDim) {
    scalar::reconstruct_trace(comps, lambdas, coeffs, omega_m, kmax, times, out);
    return;
  }
  const int nt = static_cast<int>(times.size());
  out.resize(dim, nt);
  const int ncols = 2 * kmax + 1;
  const int nt4 = nt - (nt % 4);

  alignas(32) double wre[4], wim[4], zre[4], zim[4], fre[4], fim[4];

  for (size_t mu = 0; mu < comps.size(); ++mu) {
    const Matrix& c = comps[mu];
    const double lam = lambdas(static_cast<Eigen::Index>(mu));
    const Cx coeff = coeffs(static_cast<Eigen::Index>(mu));

    for (int t0 = 0; t0 < nt4; t0 += 4) {
      for (int l = 0; l < 4; ++l) {
        const double theta = omega_m * times[t0 + l];
        wre[l] = std::cos(theta);
        wim[l] = -std::sin(theta);
        zre[l] = std::cos(kmax * theta);
        zim[l] = std::sin(kmax * theta);
        const double phase = lam * times[t0 + l];
        const Cx f = coeff * Cx(std::cos(phase), -std::sin(phase));
        fre[l] = f.real();
        fim[l] = f.imag();
      }
      __m256d zr = _mm256_load_pd(zre), zi = _mm256_load_pd(zim);
      const __m256d wr = _mm256_load_pd(wre), wi = _mm256_load_pd(wim);
      __m256d ar[kMaxDim], ai[kMaxDim];
      for (int i = 0; i < dim; ++i) {
        ar[i] = _mm256_setzero_pd();
        ai[i] = _mm256_setzero_pd();
      }
      for (int col = 0; col < ncols; ++col) {
        for (int i = 0; i < dim; ++i) {
          const Cx v = c(i, col);
          const __m256d cr = _mm256_set1_pd(v.real());
          const __m256d ci = _mm256_set1_pd(v.imag());
          // acc += c * z
          ar[i] = mul_add(cr, zr, ar[i]);
          ar[i] = _mm256_fnmadd_pd(ci, zi, ar[i]);
          ai[i] = mul_add(cr, zi, ai[i]);
          ai[i] = mul_add(ci, zr, ai[i]);
        }
        const __m256d nzr = _mm256_sub_pd(_mm256_mul_pd(zr, wr), _mm256_mul_pd(zi, wi));
        zi = _mm256_add_pd(_mm256_mul_pd(zr, wi), _mm256_mul_pd(zi, wr));
        zr = nzr;
      }
      const __m256d fr = _mm256_load_pd(fre), fi = _mm256_load_pd(fim);
      for (int i = 0; i < dim; ++i) {
        double* ore = out.re.data() + static_cast<size_t>(i) * nt + t0;
        double* oim = out.im.data() + static_cast<size_t>(i) * nt + t0;
        __m256d vre = _mm256_loadu_pd(ore), vim = _mm256_loadu_pd(oim);
        vre = mul_add(fr, ar[i], vre);
        vre = _mm256_fnmadd_pd(fi, ai[i], vre);
        vim = mul_add(fr, ai[i], vim);
        vim = mul_add(fi, ar[i], vim);
        _mm256_storeu_pd(ore, vre);
        _mm256_storeu_pd(oim, vim);
      }
    }

    for (int t = nt4; t < nt; ++t) {
      const double theta = omega_m * times[t];
      const Cx w(std::cos(theta), -std::sin(theta));
      Cx z(std::cos(kmax * theta), std::sin(kmax * theta));
      Vector acc = Vector::Zero(dim);
      for (int col = 0; col < ncols; ++col) {
        for (int i = 0; i < dim; ++i) acc(i) += c(i, col) * z;
        z *= w;
      }
      const double phase = lam * times[t];
      const Cx f = coeff * Cx(std::cos(phase), -std::sin(phase));
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
  const int b4 = bins - (bins % 4);
  alignas(32) double csb[4], snb[4], resb[4], imsb[4];

  for (int k0 = 0; k0 < b4; k0 += 4) {
    for (int l = 0; l < 4; ++l) {
      const double step = two_pi * (k0 + l) / n;
      csb[l] = std::cos(step);
      snb[l] = std::sin(step);
    }
    const __m256d cs = _mm256_load_pd(csb), sn = _mm256_load_pd(snb);
    __m256d c = _mm256_set1_pd(1.0), s = _mm256_setzero_pd();
    __m256d accre = _mm256_setzero_pd(), accim = _mm256_setzero_pd();
    for (int t = 0; t < n; ++t) {
      const __m256d xb = _mm256_set1_pd(x[t]);
      accre = mul_add(xb, c, accre);
      accim = mul_add(xb, s, accim);
      const __m256d cn = _mm256_sub_pd(_mm256_mul_pd(c, cs), _mm256_mul_pd(s, sn));
      s = _mm256_add_pd(_mm256_mul_pd(c, sn), _mm256_mul_pd(s, cs));
      c = cn;
    }
    _mm256_store_pd(resb, accre);
    _mm256_store_pd(imsb, accim);
    for (int l = 0; l < 4; ++l) out[k0 + l] = Cx(resb[l], -imsb[l]);
  }

  for (int k = b4; k < bins; ++k) {
    const double step = two_pi * k / n;
    const double cs = std::cos(step), sn = std::sin(step);
    double c = 1.0, s = 0.0, acc_re = 0.0, acc_im = 0.0;
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
  const int nt4 = nt - (nt % 4);

  for (int i = 0; i < dim; ++i) {
    const double wii = w(i, i).real();
    const double* ar = states.re.data() + static_cast<size_t>(i) * nt;
    const double* ai = states.im.data() + static_cast<size_t>(i) * nt;
    const __m256d wiiv = _mm256_set1_pd(wii);
    for (int t = 0; t < nt4; t += 4) {
      const __m256d a = _mm256_loadu_pd(ar + t), b = _mm256_loadu_pd(ai + t);
      __m256d acc = _mm256_loadu_pd(out.data() + t);
      acc = mul_add(wiiv, mul_add(a, a, _mm256_mul_pd(b, b)), acc);
      _mm256_storeu_pd(out.data() + t, acc);
    }
    for (int t = nt4; t < nt; ++t) out[t] += wii * (ar[t] * ar[t] + ai[t] * ai[t]);

    for (int j = i + 1; j < dim; ++j) {
      const double u = w(i, j).real(), v = w(i, j).imag();
      if (u == 0.0 && v == 0.0) continue;
      const double* br = states.re.data() + static_cast<size_t>(j) * nt;
      const double* bi = states.im.data() + static_cast<size_t>(j) * nt;
      const __m256d uv = _mm256_set1_pd(2.0 * u), vv = _mm256_set1_pd(2.0 * v);
      for (int t = 0; t < nt4; t += 4) {
        const __m256d are = _mm256_loadu_pd(ar + t), aim = _mm256_loadu_pd(ai + t);
        const __m256d bre = _mm256_loadu_pd(br + t), bim = _mm256_loadu_pd(bi + t);
        __m256d acc = _mm256_loadu_pd(out.data() + t);
        acc = mul_add(uv, mul_add(are, bre, _mm256_mul_pd(aim, bim)), acc);
        acc = _mm256_fnmadd_pd(vv, _mm256_sub_pd(_mm256_mul_pd(are, bim), _mm256_mul_pd(aim, bre)),
                               acc);
        _mm256_storeu_pd(out.data() + t, acc);
      }
      for (int t = nt4; t < nt; ++t)
        out[t] += 2.0 * (u * (ar[t] * br[t] + ai[t] * bi[t]) - v * (ar[t] * bi[t] - ai[t] * br[t]));
    }
  }
}

}  // namespace floq::kern::avx2

#endif
