#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "floquet/errors.hpp"
#include "floquet/hamiltonians.hpp"
#include "test_helpers.hpp"

using namespace floq;
using testutil::max_diff;

namespace {
const Cx I{0.0, 1.0};
}

TEST_CASE("interaction TLS matches its defining time series") {
  PhaseModTLS p;
  p.omega = 1.3;
  p.epsilon_m = 4.0;
  p.omega_m = 7.0;
  p.phi = 0.3;
  p.delta = 0.22;
  const auto h = build_interaction_tls(p);
  for (int k = 0; k < 60; ++k) {
    const double t = 0.031 + 3.0 * k / 59.0;
    const Matrix want = 0.5 * p.delta * pauli_z() + 0.5 * p.omega * pauli_x() +
                        p.epsilon_m * std::sin(p.omega_m * t + p.phi) * pauli_z();
    CHECK(max_diff(h.sample(t), want) < 1e-11);
  }
  CHECK(h.max_harmonic() == 1);
}

TEST_CASE("phase-mod drive components carry the +-i epsilon/2 weights") {
  PhaseModTLS p;
  p.omega = 1.0;
  p.epsilon_m = 2.0;
  p.omega_m = 5.0;
  const auto h = build_interaction_tls(p);
  const Matrix plus = h.component(1), minus = h.component(-1);
  CHECK(std::abs(plus(0, 0) - I * 1.0) < 1e-14);
  CHECK(std::abs(plus(1, 1) + I * 1.0) < 1e-14);
  CHECK(max_diff(minus, plus.adjoint()) < 1e-14);
  CHECK(max_abs(h.component(3)) == 0.0);
}

TEST_CASE("amplitude-mod TLS matches its defining time series") {
  AmpModTLS p;
  p.omega = 0.9;
  p.epsilon_m = 3.1;
  p.omega_m = 6.3;
  p.phi = 1.1;
  p.delta = -0.4;
  const auto h = build_amp_mod_tls(p);
  for (int k = 0; k < 60; ++k) {
    const double t = 0.017 + 2.0 * k / 59.0;
    const Matrix want = 0.5 * p.delta * pauli_z() + 0.5 * p.omega * pauli_x() +
                        p.epsilon_m * std::cos(p.omega_m * t + p.phi) * pauli_y();
    CHECK(max_diff(h.sample(t), want) < 1e-11);
  }
}

TEST_CASE("breaking terms add the requested harmonics") {
  PhaseModTLS p;
  p.omega = 1.0;
  p.epsilon_m = 4.0;
  p.omega_m = 7.0;
  p.breaking.push_back({2, 'x', 0.25, true});
  p.breaking.push_back({3, 'z', 0.1, false});
  const auto h = build_interaction_tls(p);
  CHECK(h.max_harmonic() == 3);
  for (int k = 0; k < 40; ++k) {
    const double t = 0.5 * k / 39.0;
    const Matrix want = 0.5 * p.omega * pauli_x() +
                        p.epsilon_m * std::sin(p.omega_m * t) * pauli_z() +
                        0.25 * p.epsilon_m * std::sin(2.0 * p.omega_m * t) * pauli_x() +
                        0.1 * std::sin(3.0 * p.omega_m * t) * pauli_z();
    CHECK(max_diff(h.sample(t), want) < 1e-11);
  }
}

TEST_CASE("three-level rotating drive matches the stepped-phase bonds") {
  ThreeLevelRotating p;
  p.j = 0.8;
  p.omega_m = 5.0;
  const auto h = build_three_level_rotating(p);
  auto bond = [](int i, int j) {
    Matrix x = Matrix::Zero(3, 3);
    x(i, j) = x(j, i) = 1.0;
    return x;
  };
  for (int k = 0; k < 60; ++k) {
    const double t = 0.013 + 2.0 * k / 59.0;
    const Matrix want = p.j * (std::cos(p.omega_m * t) * bond(0, 2) +
                               std::cos(p.omega_m * t + two_pi / 3.0) * bond(2, 1) +
                               std::cos(p.omega_m * t + 2.0 * two_pi / 3.0) * bond(0, 1));
    CHECK(max_diff(h.sample(t), want) < 1e-11);
  }
}

TEST_CASE("three-level rotating drive commutes with rotation o third-period shift") {
  ThreeLevelRotating p;
  p.j = 1.2;
  p.omega_m = 4.0;
  const auto h = build_three_level_rotating(p);
  const Matrix r = rotation3();
  const double third = h.period() / 3.0;
  for (int k = 0; k < 24; ++k) {
    const double t = 0.09 * k;
    CHECK(max_diff(r * h.sample(t + third) * r.adjoint(), h.sample(t)) < 1e-11);
  }
  CHECK(max_diff(r * r * r, Matrix::Identity(3, 3)) < 1e-15);
  CHECK(max_diff(r * r.adjoint(), Matrix::Identity(3, 3)) < 1e-15);
}

TEST_CASE("first-frame drive matches its modulation envelopes") {
  ThreeLevelFirstFrame p;
  p.delta = 10.0;
  p.omega1 = 20.0;
  p.omega2 = 20.0;
  p.j = 0.1;
  p.omega_m = 2.0;
  const auto h = build_three_level_first_frame(p);
  CHECK(h.max_harmonic() == 16);  // 3*(delta/omega_m) + 1

  Matrix h0 = Matrix::Zero(3, 3);
  h0(0, 1) = h0(1, 0) = 0.5 * p.omega2;
  h0(1, 2) = h0(2, 1) = 0.5 * p.omega1;
  h0(1, 1) = p.delta;
  Matrix x1 = Matrix::Zero(3, 3), x2 = Matrix::Zero(3, 3);
  x1(1, 2) = I;
  x1(2, 1) = -I;
  x2(0, 1) = I;
  x2(1, 0) = -I;

  for (int k = 0; k < 80; ++k) {
    const double t = 0.011 + 3.0 * k / 79.0;
    const double e1 = 2.0 * std::sqrt(3.0) * p.j * std::sin(2.0 * p.delta * t) *
                          std::cos(p.omega_m * t + two_pi / 3.0) -
                      2.0 * std::sqrt(2.0) * p.j * std::sin(3.0 * p.delta * t) *
                          std::cos(p.omega_m * t);
    const double e2 = 2.0 * std::sqrt(6.0) * p.j * std::sin(p.delta * t) *
                      std::cos(p.omega_m * t + 2.0 * two_pi / 3.0);
    const Matrix want = h0 + e1 * x1 + e2 * x2;
    CHECK(max_diff(h.sample(t), want) < 1e-10);
  }
}

TEST_CASE("first-frame parameter validation") {
  ThreeLevelFirstFrame p;
  p.delta = 10.0;
  p.omega1 = 20.0;
  p.omega2 = 20.0;
  p.j = 0.1;
  p.omega_m = 2.0;
  auto bad = p;
  bad.omega1 = 19.0;
  CHECK_THROWS_AS(build_three_level_first_frame(bad), InvalidParameter);
  bad = p;
  bad.omega_m = 3.0;  // delta/omega_m not an integer
  CHECK_THROWS_AS(build_three_level_first_frame(bad), InvalidParameter);
}

TEST_CASE("Fourier container enforces hermiticity pairing") {
  std::map<int, Matrix> comps;
  comps[0] = pauli_x();
  comps[1] = Matrix::Identity(2, 2) * Cx(0.0, 1.0);
  CHECK_THROWS_AS(FourierHamiltonian(2, 1.0, comps), InvalidParameter);
  comps[-1] = comps[1].adjoint();
  CHECK_NOTHROW(FourierHamiltonian(2, 1.0, comps));
  comps[-1](0, 0) += 0.5;
  CHECK_THROWS_AS(FourierHamiltonian(2, 1.0, comps), InvalidParameter);
}

TEST_CASE("samples of random component sets are Hermitian") {
  for (int rep = 0; rep < 20; ++rep) {
    std::map<int, Matrix> comps;
    comps[0] = testutil::random_hermitian(3);
    for (int n = 1; n <= 3; ++n) {
      comps[n] = testutil::random_complex(3, 3);
      comps[-n] = comps[n].adjoint();
    }
    FourierHamiltonian h(3, 2.0, comps);
    for (int k = 0; k < 5; ++k) CHECK(is_hermitian(h.sample(testutil::uniform(0.0, 9.0)), 1e-10));
  }
}

TEST_CASE("detuning ensemble grid and weights") {
  PhaseModTLS p;
  p.omega = 1.0;
  p.epsilon_m = 4.0;
  p.omega_m = 7.0;
  EnsembleSpec ens;
  ens.sigma = 0.5;
  ens.count = 21;
  ens.span = 2.0;
  const auto members = expand_ensemble(p, ens);
  REQUIRE(members.size() == 21);
  CHECK(members.front().delta == doctest::Approx(-1.0));
  CHECK(members.back().delta == doctest::Approx(1.0));
  CHECK(members[10].delta == doctest::Approx(0.0));
  double total = 0.0;
  for (const auto& m : members) total += m.weight;
  CHECK(total == doctest::Approx(1.0));
  CHECK(members.front().weight / members[10].weight == doctest::Approx(std::exp(-2.0)));
  const auto& inner = std::get<PhaseModTLS>(members[3].spec);
  CHECK(inner.delta == doctest::Approx(members[3].delta));

  EnsembleSpec single;
  single.sigma = 0.5;
  single.count = 1;
  const auto one = expand_ensemble(p, single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].delta == 0.0);
  CHECK(one[0].weight == doctest::Approx(1.0));

  ThreeLevelRotating r;
  r.j = 1.0;
  r.omega_m = 2.0;
  CHECK_THROWS_AS(expand_ensemble(DriveSpec(r), ens), InvalidParameter);
}

TEST_CASE("probe eigenbasis is orthonormal and diagonalizes the probe") {
  const Matrix v = three_level_v();
  const double evals[] = {2.0, -1.0, -1.0};
  for (int k = 1; k <= 3; ++k) {
    const Vector e = three_level_e(k);
    CHECK(e.norm() == doctest::Approx(1.0));
    CHECK((v * e - evals[k - 1] * e).norm() < 1e-12);
    for (int l = k + 1; l <= 3; ++l) CHECK(std::abs(Cx(e.dot(three_level_e(l)))) < 1e-12);
  }
}

TEST_CASE("first-frame state map is unitary with the frozen t=0 image") {
  ThreeLevelFirstFrame p;
  p.delta = 10.0;
  p.omega1 = 20.0;
  p.omega2 = 20.0;
  p.j = 0.1;
  p.omega_m = 2.0;
  const Vector probe = (Vector(3) << 1, 0, 0).finished();
  const Vector at0 = map_first_frame_state(p, 0.0, probe);
  CHECK(std::abs(at0(0) - 1.0 / std::sqrt(3.0)) < 1e-12);
  CHECK(std::abs(at0(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(at0(2) - 1.0 / std::sqrt(6.0)) < 1e-12);
  for (int rep = 0; rep < 10; ++rep) {
    const Vector psi = testutil::random_state(3);
    const double t = testutil::uniform(0.0, 5.0);
    CHECK(map_first_frame_state(p, t, psi).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("build_hamiltonian dispatches every spec variant") {
  PhaseModTLS a;
  a.omega = 1.0;
  a.epsilon_m = 2.0;
  a.omega_m = 5.0;
  AmpModTLS b;
  b.omega = 1.0;
  b.epsilon_m = 2.0;
  b.omega_m = 5.0;
  ThreeLevelRotating c;
  c.j = 1.0;
  c.omega_m = 5.0;
  ThreeLevelFirstFrame d;
  d.delta = 10.0;
  d.omega1 = 20.0;
  d.omega2 = 20.0;
  d.j = 0.1;
  d.omega_m = 2.0;
  CHECK(build_hamiltonian(DriveSpec(a)).dim() == 2);
  CHECK(build_hamiltonian(DriveSpec(b)).dim() == 2);
  CHECK(build_hamiltonian(DriveSpec(c)).dim() == 3);
  CHECK(build_hamiltonian(DriveSpec(d)).dim() == 3);
  CHECK(spec_dim(DriveSpec(a)) == 2);
  CHECK(spec_dim(DriveSpec(d)) == 3);
  CHECK(spec_omega_m(DriveSpec(c)) == doctest::Approx(5.0));
}
