#include "floquet/floquet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "floquet/errors.hpp"

namespace floq {

namespace {

constexpr Cx I{0.0, 1.0};

double block_weight(const Vector& v, int dim, int kmax, int window) {
  double w = 0.0;
  for (int n = -window; n <= window; ++n) w += v.segment((n + kmax) * dim, dim).squaredNorm();
  return w;
}

}  // namespace

Vector FloquetModes::component(int mu, int n) const {
  if (mu < 0 || mu >= dim) throw InvalidParameter("mode index out of range");
  if (std::abs(n) > kmax) throw InvalidParameter("harmonic index outside truncation");
  return components[mu].col(n + kmax);
}

Matrix assemble_floquet_matrix(const FourierHamiltonian& h, int kblocks) {
  const int maxh = h.max_harmonic();
  if (kblocks < maxh)
    throw InvalidParameter("Floquet truncation K=" + std::to_string(kblocks) +
                           " is below the max drive harmonic " + std::to_string(maxh));
  const int dim = h.dim();
  const int nb = 2 * kblocks + 1;
  Matrix f = Matrix::Zero(static_cast<Eigen::Index>(nb) * dim, static_cast<Eigen::Index>(nb) * dim);
  for (int r = 0; r < nb; ++r) {
    const int p = r - kblocks;
    for (int c = std::max(0, r - maxh); c <= std::min(nb - 1, r + maxh); ++c) {
      const int q = c - kblocks;
      if (h.has_component(p - q)) f.block(r * dim, c * dim, dim, dim) = h.component(p - q);
    }
    f.block(r * dim, r * dim, dim, dim) +=
        static_cast<double>(-p) * h.omega_m() * Matrix::Identity(dim, dim);
  }
  return f;
}

FloquetModes solve_modes(const FourierHamiltonian& h, int kblocks) {
  const int dim = h.dim();
  const double om = h.omega_m();
  const Matrix f = assemble_floquet_matrix(h, kblocks);
  Eigen::SelfAdjointEigenSolver<Matrix> es(f);
  if (es.info() != Eigen::Success) throw FloquetError("Floquet eigensolver did not converge");

  // Half-open zone with a relative cushion so boundary eigenvalues fold to +ω/2.
  const double cushion = 1e-9 * om;
  const double lo = -0.5 * om + cushion, hi = 0.5 * om + cushion;
  std::vector<int> in_zone;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > lo && lam <= hi) in_zone.push_back(i);
  }
  if (static_cast<int>(in_zone.size()) < dim)
    throw DegenerateSelection("only " + std::to_string(in_zone.size()) + " of " +
                              std::to_string(dim) + " quasi-energies found in the zone");
  if (static_cast<int>(in_zone.size()) > dim) {
    const int window = std::max(0, kblocks - std::max(5, kblocks / 10));
    std::stable_sort(in_zone.begin(), in_zone.end(), [&](int a, int b) {
      return block_weight(es.eigenvectors().col(a), dim, kblocks, window) >
             block_weight(es.eigenvectors().col(b), dim, kblocks, window);
    });
    in_zone.resize(dim);
    std::sort(in_zone.begin(), in_zone.end(), [&](int a, int b) {
      return es.eigenvalues()(a) < es.eigenvalues()(b);
    });
  }

  FloquetModes modes;
  modes.dim = dim;
  modes.omega_m = om;
  modes.kmax = kblocks;
  modes.quasi_energies = RealVector(dim);
  const int tail_from = std::max(kblocks - 5, 0) + 1;
  for (int mu = 0; mu < dim; ++mu) {
    Vector v = es.eigenvectors().col(in_zone[mu]);
    v.normalize();

    double tail = 0.0;
    for (int n = tail_from; n <= kblocks; ++n) {
      tail += v.segment((n + kblocks) * dim, dim).squaredNorm();
      tail += v.segment((-n + kblocks) * dim, dim).squaredNorm();
    }
    if (tail > 1e-10)
      throw TruncationTooSmall("mode tail weight " + std::to_string(tail) +
                               " at K=" + std::to_string(kblocks));

    // Gauge: largest entry of Φ_0 real positive, global fallback for empty Φ_0.
    Eigen::Index imax = 0;
    v.segment(kblocks * dim, dim).cwiseAbs().maxCoeff(&imax);
    Cx pivot = v(kblocks * dim + imax);
    if (std::abs(pivot) < 1e-8) {
      v.cwiseAbs().maxCoeff(&imax);
      pivot = v(imax);
    }
    v *= std::conj(pivot) / std::abs(pivot);

    modes.quasi_energies(mu) = es.eigenvalues()(in_zone[mu]);
    Matrix comp(dim, 2 * kblocks + 1);
    for (int n = -kblocks; n <= kblocks; ++n)
      comp.col(n + kblocks) = v.segment((n + kblocks) * dim, dim);
    modes.components.push_back(std::move(comp));
  }
  return modes;
}

Vector mode_at_time(const FloquetModes& m, int mu, double t) {
  if (mu < 0 || mu >= m.dim) throw InvalidParameter("mode index out of range");
  const Matrix& comp = m.components[mu];
  const double theta = m.omega_m * t;
  const Cx w = std::exp(-I * theta);
  Cx z = std::exp(I * (static_cast<double>(m.kmax) * theta));
  Vector acc = Vector::Zero(m.dim);
  for (int col = 0; col < comp.cols(); ++col) {
    acc += comp.col(col) * z;
    z *= w;
  }
  return acc;
}

Vector initial_coefficients(const FloquetModes& m, const Vector& psi0) {
  if (psi0.size() != m.dim) throw InvalidParameter("initial state has wrong dimension");
  Matrix basis(m.dim, m.dim);
  for (int mu = 0; mu < m.dim; ++mu) basis.col(mu) = m.components[mu].rowwise().sum();
  Eigen::JacobiSVD<Matrix> svd(basis, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues()(m.dim - 1);
  const double smax = svd.singularValues()(0);
  if (smax <= 0.0 || smin / smax < 1e-10)
    throw SingularBasis("t=0 mode basis is rank-deficient (condition " +
                        std::to_string(smax / std::max(smin, 1e-300)) + ")");
  return svd.solve(psi0);
}

}  // namespace floq
