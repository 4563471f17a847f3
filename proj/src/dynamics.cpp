#include "floquet/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "floquet/errors.hpp"

namespace floq {

namespace {

constexpr Cx I{0.0, 1.0};

double drive_scale(const FourierHamiltonian& h) {
  double scale = 0.0;
  for (const auto& [n, hn] : h.components()) {
    if (n < 0) continue;
    const double w = n == 0 ? 1.0 : 2.0;
    if (is_hermitian(hn, 1e-12 * std::max(max_abs(hn), 1.0)))
      scale += w * hn.selfadjointView<Eigen::Lower>().operatorNorm();
    else
      scale += w * hn.jacobiSvd().singularValues()(0);
  }
  return scale;
}

// Closed-form 2x2 unitary from H = a0·Id + v·σ.
Vector step_two_level(const Matrix& h, double dt, const Vector& v) {
  const double a0 = 0.5 * std::real(h(0, 0) + h(1, 1));
  const double z = 0.5 * std::real(h(0, 0) - h(1, 1));
  const double x = std::real(h(0, 1));
  const double y = -std::imag(h(0, 1));
  const Cx ph = std::exp(-I * (a0 * dt));
  const double vn = std::sqrt(x * x + y * y + z * z);
  if (vn == 0.0) return ph * v;
  const double c = std::cos(vn * dt), s = std::sin(vn * dt) / vn;
  Matrix u(2, 2);
  u(0, 0) = ph * Cx(c, -s * z);
  u(1, 1) = ph * Cx(c, s * z);
  u(0, 1) = ph * -I * s * Cx(x, -y);
  u(1, 0) = ph * -I * s * Cx(x, y);
  return u * v;
}

Vector step_general(const Matrix& h, double dt, const Vector& v) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector phases =
      (-I * dt * es.eigenvalues().array().cast<Cx>()).exp().matrix();
  return es.eigenvectors() * phases.cwiseProduct(es.eigenvectors().adjoint() * v);
}

}  // namespace

std::vector<double> sample_times(double t_end, int n) {
  if (n < 2) throw InvalidParameter("need at least two sample times");
  if (t_end <= 0.0) throw InvalidParameter("t_end must be positive");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_end * i / (n - 1);
  return t;
}

EvolutionTrace trotter_evolve(const FourierHamiltonian& h, const Vector& psi0, double dt,
                              double t_end, int n_samples) {
  if (psi0.size() != h.dim()) throw InvalidParameter("initial state has wrong dimension");
  if (std::abs(psi0.norm() - 1.0) > 1e-8)
    throw InvalidParameter("initial state must be normalized");
  if (dt <= 0.0) throw InvalidParameter("dt must be positive");
  const auto times = sample_times(t_end, n_samples);
  const double interval = times[1];
  const double ratio = interval / dt;
  const long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio)
    throw InvalidParameter("dt must divide the sampling interval");
  const double scale = drive_scale(h);
  if (dt * scale > 0.1)
    throw StepTooLarge("dt*scale = " + std::to_string(dt * scale) + " exceeds 0.1");

  const int dim = h.dim();
  EvolutionTrace out;
  out.times = times;
  out.method = "trotter";
  out.dt = dt;
  out.states.resize(dim, n_samples);

  auto record = [&](int s, const Vector& v) {
    for (int i = 0; i < dim; ++i) {
      out.states.re[static_cast<size_t>(i) * n_samples + s] = std::real(v(i));
      out.states.im[static_cast<size_t>(i) * n_samples + s] = std::imag(v(i));
    }
  };

  Vector state = psi0;
  record(0, state);
  for (int s = 1; s < n_samples; ++s) {
    const double t0 = times[s - 1];
    for (long j = 0; j < steps; ++j) {
      const Matrix hm = h.sample(t0 + (j + 0.5) * dt);
      state = dim == 2 ? step_two_level(hm, dt, state) : step_general(hm, dt, state);
    }
    record(s, state);
  }
  return out;
}

EvolutionTrace floquet_evolve(const FloquetModes& m, const Vector& coeffs,
                              const std::vector<double>& times) {
  if (coeffs.size() != m.dim) throw InvalidParameter("coefficient count must match mode count");
  EvolutionTrace out;
  out.times = times;
  out.method = "floquet";
  kern::reconstruct_trace(m.components, m.quasi_energies, coeffs, m.omega_m, m.kmax, times,
                          out.states);
  return out;
}

RabiTrace projection_trace(const EvolutionTrace& e, const Vector& k) {
  if (k.size() != e.states.dim) throw InvalidParameter("projector has wrong dimension");
  if (std::abs(k.norm() - 1.0) > 1e-8) throw InvalidParameter("projector must be normalized");
  RabiTrace out;
  out.times = e.times;
  kern::expectation_trace(e.states, k * k.adjoint(), out.values);
  return out;
}

RabiTrace weighted_rabi(const EvolutionTrace& e, const ProbeOperator& v) {
  if (v.matrix.rows() != e.states.dim) throw InvalidParameter("probe has wrong dimension");
  if (v.norm <= 0.0) throw InvalidParameter("probe normalization is zero");
  RabiTrace out;
  out.times = e.times;
  kern::expectation_trace(e.states, Matrix(v.matrix / v.norm), out.values);
  return out;
}

}  // namespace floq
