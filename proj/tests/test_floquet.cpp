#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "floquet/errors.hpp"
#include "floquet/floquet.hpp"
#include "floquet/hamiltonians.hpp"
#include "test_helpers.hpp"

using namespace floq;
using testutil::max_diff;

namespace {

const Cx I{0.0, 1.0};

PhaseModTLS tls(double omega, double omega_m, double two_eps_over_w, double phi = 0.0) {
  PhaseModTLS p;
  p.omega = omega;
  p.omega_m = omega_m;
  p.epsilon_m = 0.5 * two_eps_over_w * omega_m;
  p.phi = phi;
  return p;
}

double gap_at(double two_eps_over_w, double omega, double omega_m, int k) {
  const auto m = solve_modes(build_interaction_tls(tls(omega, omega_m, two_eps_over_w)), k);
  return m.quasi_energies(1) - m.quasi_energies(0);
}

}  // namespace

TEST_CASE("K=1 assembly reproduces the explicit six-by-six block matrix") {
  const double omega = 1.3, eps = 0.9, om = 2.1, phi = 0.7;
  PhaseModTLS p;
  p.omega = omega;
  p.epsilon_m = eps;
  p.omega_m = om;
  p.phi = phi;
  const Matrix f = assemble_floquet_matrix(build_interaction_tls(p), 1);
  REQUIRE(f.rows() == 6);

  const Cx up = Cx(0.0, -0.5 * eps) * std::exp(I * phi);    // H_{-1} weight on |0><0|
  const Cx dn = Cx(0.0, 0.5 * eps) * std::exp(-I * phi);    // H_{+1} weight on |0><0|
  const double hx = 0.5 * omega;
  Matrix want(6, 6);
  want << om, hx, up, 0, 0, 0,
          hx, om, 0, -up, 0, 0,
          dn, 0, 0, hx, up, 0,
          0, -dn, hx, 0, 0, -up,
          0, 0, dn, 0, -om, hx,
          0, 0, 0, -dn, hx, -om;
  CHECK(max_diff(f, want) < 1e-14);
  CHECK(max_diff(f, f.adjoint()) < 1e-14);
}

TEST_CASE("static Hamiltonian assembles to H0 at K=0") {
  PhaseModTLS p;
  p.omega = 1.7;
  p.epsilon_m = 0.0;
  p.omega_m = 3.0;
  p.delta = 0.4;
  const auto h = build_interaction_tls(p);
  const Matrix f = assemble_floquet_matrix(h, 0);
  CHECK(max_diff(f, h.component(0)) < 1e-15);
}

TEST_CASE("assembly rejects K below the max drive harmonic") {
  PhaseModTLS p;
  p.omega = 1.0;
  p.epsilon_m = 1.0;
  p.omega_m = 3.0;
  p.breaking.push_back({3, 'z', 0.2, false});
  const auto h = build_interaction_tls(p);
  CHECK_THROWS_AS(assemble_floquet_matrix(h, 2), InvalidParameter);
  CHECK_NOTHROW(assemble_floquet_matrix(h, 3));
}

TEST_CASE("random component sets assemble into the expected block layout") {
  const int dim = 3, k = 4;
  std::map<int, Matrix> comps;
  comps[0] = testutil::random_hermitian(dim);
  for (int n = 1; n <= 2; ++n) {
    comps[n] = testutil::random_complex(dim, dim);
    comps[-n] = comps[n].adjoint();
  }
  FourierHamiltonian h(dim, 1.9, comps);
  const Matrix f = assemble_floquet_matrix(h, k);
  CHECK(max_diff(f, f.adjoint()) < 1e-14);
  for (int r = 0; r <= 2 * k; ++r) {
    for (int c = 0; c <= 2 * k; ++c) {
      const int p = r - k, q = c - k;
      Matrix want = h.component(p - q);
      if (p == q) want += -p * h.omega_m() * Matrix::Identity(dim, dim);
      CHECK(max_diff(f.block(r * dim, c * dim, dim, dim), want) < 1e-14);
    }
  }
}

TEST_CASE("static solve folds the spectrum and keeps modes in the n=0 block") {
  const auto m = solve_modes(build_interaction_tls(tls(1.0, 3.0, 0.0)), 2);
  CHECK(m.quasi_energies(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(m.quasi_energies(1) == doctest::Approx(0.5).epsilon(1e-12));
  const Vector lo = m.component(0, 0), hi = m.component(1, 0);
  CHECK(std::abs(lo(0) - 1.0 / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(lo(1) + 1.0 / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(hi(0) - 1.0 / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(hi(1) - 1.0 / std::sqrt(2.0)) < 1e-10);
  for (int n = 1; n <= 2; ++n) {
    CHECK(m.component(0, n).norm() < 1e-10);
    CHECK(m.component(0, -n).norm() < 1e-10);
  }
}

TEST_CASE("zone-boundary spectrum folds both representatives to +omega_m/2") {
  const auto m = solve_modes(build_interaction_tls(tls(3.0, 3.0, 0.0)), 8);
  CHECK(std::abs(m.quasi_energies(0) - 1.5) < 1e-9);
  CHECK(std::abs(m.quasi_energies(1) - 1.5) < 1e-9);
  Cx cross = 0.0;
  double n0 = 0.0, n1 = 0.0;
  for (int n = -8; n <= 8; ++n) {
    cross += Cx(m.component(0, n).adjoint() * m.component(1, n));
    n0 += m.component(0, n).squaredNorm();
    n1 += m.component(1, n).squaredNorm();
  }
  CHECK(std::abs(cross) < 1e-8);
  CHECK(n0 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(n1 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("quasi-energy gap collapses near the Bessel zero of the drive ratio") {
  double best = 1e300, bestx = 0.0;
  for (double x = 2.38; x <= 2.4301; x += 0.002) {
    const double g = gap_at(x, 1.5, 15.0, 20);
    if (g < best) {
      best = g;
      bestx = x;
    }
  }
  CHECK(std::abs(bestx - 2.4048) < 0.01);
  CHECK(best < 2e-3 * 1.5);
  CHECK(gap_at(2.0, 1.5, 15.0, 20) > 0.1 * 1.5);
}

TEST_CASE("undertruncated heavy drive raises TruncationTooSmall") {
  CHECK_THROWS_AS(solve_modes(build_interaction_tls(tls(3.0, 3.0, 8.0)), 8), TruncationTooSmall);
  CHECK_NOTHROW(solve_modes(build_interaction_tls(tls(3.0, 3.0, 8.0)), 30));
}

TEST_CASE("solutions converge between K and K+20") {
  const auto h = build_interaction_tls(tls(3.0, 3.0, 2.75));
  const auto a = solve_modes(h, 30);
  const auto b = solve_modes(h, 50);
  for (int mu = 0; mu < 2; ++mu) {
    CHECK(std::abs(a.quasi_energies(mu) - b.quasi_energies(mu)) < 1e-9 * 3.0);
    Cx ov = 0.0;
    for (int n = -30; n <= 30; ++n) ov += Cx(a.component(mu, n).adjoint() * b.component(mu, n));
    CHECK(std::abs(ov) > 1.0 - 1e-9);
  }
}

TEST_CASE("mode time series sums components, keeps norm, and is T-periodic") {
  const auto h = build_interaction_tls(tls(3.0, 3.0, 2.75, 0.4));
  const auto m = solve_modes(h, 30);
  for (int mu = 0; mu < 2; ++mu) {
    Vector sum = Vector::Zero(2);
    for (int n = -30; n <= 30; ++n) sum += m.component(mu, n);
    CHECK((mode_at_time(m, mu, 0.0) - sum).norm() < 1e-12);
    for (int rep = 0; rep < 8; ++rep) {
      const double t = testutil::uniform(0.0, 5.0 * h.period());
      const Vector phi = mode_at_time(m, mu, t);
      CHECK(std::abs(phi.norm() - 1.0) < 1e-8);
      CHECK((mode_at_time(m, mu, t + h.period()) - phi).norm() < 1e-8);
    }
  }
}

TEST_CASE("representative manifolds replicate at integer multiples of omega_m") {
  const auto h = build_interaction_tls(tls(3.0, 3.0, 2.75));
  const int k = 30;
  const auto m = solve_modes(h, k);
  Eigen::SelfAdjointEigenSolver<Matrix> es(assemble_floquet_matrix(h, k));
  const auto& all = es.eigenvalues();
  for (int mu = 0; mu < 2; ++mu) {
    for (int n = -k / 2; n <= k / 2; ++n) {
      const double target = m.quasi_energies(mu) + n * h.omega_m();
      double nearest = 1e300;
      for (int i = 0; i < all.size(); ++i) nearest = std::min(nearest, std::abs(all(i) - target));
      CHECK(nearest < 1e-8 * h.omega_m());
    }
  }
}

TEST_CASE("initial coefficients reconstruct states against the t=0 mode basis") {
  const auto h = build_interaction_tls(tls(3.0, 3.0, 2.75, 0.9));
  const auto m = solve_modes(h, 30);
  Matrix basis(2, 2);
  for (int mu = 0; mu < 2; ++mu) basis.col(mu) = mode_at_time(m, mu, 0.0);

  for (int rep = 0; rep < 10; ++rep) {
    const Vector psi = testutil::random_state(2);
    const Vector c = initial_coefficients(m, psi);
    CHECK((basis * c - psi).norm() < 1e-10);
    CHECK(std::abs(c.squaredNorm() - 1.0) < 1e-10);
  }

  const Vector cplus = initial_coefficients(m, basis.col(1));
  CHECK(std::abs(cplus(0)) < 1e-8);
  CHECK(std::abs(std::abs(cplus(1)) - 1.0) < 1e-10);
}

TEST_CASE("zero-phase modes are equal superpositions of the bare basis at t=0") {
  for (const double x : {0.5, 1.5, 2.75, 3.8}) {
    const auto m = solve_modes(build_interaction_tls(tls(3.0, 3.0, x)), 40);
    for (int mu = 0; mu < 2; ++mu) {
      Vector phi = mode_at_time(m, mu, 0.0);
      phi.normalize();
      const double z = std::real(Cx(phi.adjoint() * pauli_z() * phi));
      CHECK(std::abs(z) < 1e-6);
    }
    const Vector c = initial_coefficients(m, tls_ket0());
    CHECK(std::abs(c(0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(std::abs(c(1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  }
}

TEST_CASE("quarter-phase modes sit in the x-z plane at t=0") {
  const auto m = solve_modes(build_interaction_tls(tls(3.0, 3.0, 2.75, 0.5 * pi)), 40);
  for (int mu = 0; mu < 2; ++mu) {
    Vector phi = mode_at_time(m, mu, 0.0);
    phi.normalize();
    CHECK(std::abs(std::real(Cx(phi.adjoint() * pauli_y() * phi))) < 1e-6);
  }
}
