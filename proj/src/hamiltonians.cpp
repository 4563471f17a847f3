#include "floquet/hamiltonians.hpp"

#include <cmath>
#include <utility>

#include "floquet/errors.hpp"

namespace floq {

namespace {

constexpr Cx I{0.0, 1.0};

Matrix pauli_axis(char axis) {
  switch (axis) {
    case 'x': return pauli_x();
    case 'y': return pauli_y();
    case 'z': return pauli_z();
    default: throw InvalidParameter("breaking-term axis must be one of x, y, z");
  }
}

// Adds amp*sin(m*ω_m t + psi)*X to the component map. m = 0 degenerates to a
// static amp*sin(psi)*X contribution.
void add_sin_term(std::map<int, Matrix>& comps, int dim, int m, double psi, double amp,
                  const Matrix& x) {
  auto at = [&](int n) -> Matrix& {
    auto it = comps.find(n);
    if (it == comps.end()) it = comps.emplace(n, Matrix::Zero(dim, dim)).first;
    return it->second;
  };
  if (m == 0) {
    at(0) += amp * std::sin(psi) * x;
    return;
  }
  if (m < 0) {
    m = -m;
    psi = -psi + pi;  // sin(-a) = sin(a + pi)
  }
  const Cx c = amp / (2.0 * I);
  at(-m) += c * std::exp(I * psi) * x;
  at(+m) += -c * std::exp(-I * psi) * x;
}

void add_cos_term(std::map<int, Matrix>& comps, int dim, int m, double psi, double amp,
                  const Matrix& x) {
  add_sin_term(comps, dim, m, psi + pi / 2.0, amp, x);
}

void check_frequencies(double omega_m, double epsilon_m, double omega) {
  if (omega_m <= 0.0) throw InvalidParameter("omega_m must be positive");
  if (epsilon_m < 0.0) throw InvalidParameter("epsilon_m must be non-negative");
  if (omega < 0.0) throw InvalidParameter("omega (Rabi) must be non-negative");
}

}  // namespace

FourierHamiltonian::FourierHamiltonian(int dim, double omega_m, std::map<int, Matrix> components)
    : dim_(dim), omega_m_(omega_m), components_(std::move(components)),
      zero_(Matrix::Zero(dim, dim)) {
  if (dim_ < 1) throw InvalidParameter("Hamiltonian dimension must be at least 1");
  if (omega_m_ <= 0.0) throw InvalidParameter("omega_m must be positive");
  double scale = 0.0;
  for (const auto& [n, h] : components_) {
    if (h.rows() != dim_ || h.cols() != dim_)
      throw InvalidParameter("Fourier component has wrong dimension");
    scale = std::max(scale, max_abs(h));
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  for (const auto& [n, h] : components_) {
    auto it = components_.find(-n);
    if (it == components_.end())
      throw InvalidParameter("missing conjugate Fourier component for harmonic " +
                             std::to_string(n));
    if ((h - it->second.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw InvalidParameter("Fourier components violate H_{-n} = H_n^dagger at harmonic " +
                             std::to_string(n));
  }
}

int FourierHamiltonian::max_harmonic() const {
  int m = 0;
  for (const auto& [n, h] : components_)
    if (max_abs(h) > 0.0) m = std::max(m, std::abs(n));
  return m;
}

const Matrix& FourierHamiltonian::component(int n) const {
  auto it = components_.find(n);
  return it == components_.end() ? zero_ : it->second;
}

Matrix FourierHamiltonian::sample(double t) const {
  Matrix h = Matrix::Zero(dim_, dim_);
  for (const auto& [n, hn] : components_)
    h += hn * std::exp(-I * (static_cast<double>(n) * omega_m_ * t));
  return h;
}

FourierHamiltonian build_interaction_tls(const PhaseModTLS& p) {
  check_frequencies(p.omega_m, p.epsilon_m, p.omega);
  std::map<int, Matrix> comps;
  comps[0] = 0.5 * p.delta * pauli_z() + 0.5 * p.omega * pauli_x();
  add_sin_term(comps, 2, 1, p.phi, p.epsilon_m, pauli_z());
  for (const auto& b : p.breaking) {
    if (b.harmonic < 1) throw InvalidParameter("breaking-term harmonic must be >= 1");
    const double amp = b.relative ? b.amplitude * p.epsilon_m : b.amplitude;
    add_sin_term(comps, 2, b.harmonic, 0.0, amp, pauli_axis(b.axis));
  }
  return FourierHamiltonian(2, p.omega_m, std::move(comps));
}

FourierHamiltonian build_amp_mod_tls(const AmpModTLS& p) {
  check_frequencies(p.omega_m, p.epsilon_m, p.omega);
  std::map<int, Matrix> comps;
  comps[0] = 0.5 * p.delta * pauli_z() + 0.5 * p.omega * pauli_x();
  add_cos_term(comps, 2, 1, p.phi, p.epsilon_m, pauli_y());
  return FourierHamiltonian(2, p.omega_m, std::move(comps));
}

FourierHamiltonian build_three_level_rotating(const ThreeLevelRotating& p) {
  if (p.omega_m <= 0.0) throw InvalidParameter("omega_m must be positive");
  if (p.j < 0.0) throw InvalidParameter("J must be non-negative");
  std::map<int, Matrix> comps;
  comps[0] = Matrix::Zero(3, 3);
  // Basis (|-1>, |0>, |+1>); each bond J cos(ω_m t + φ)(E_ij + E_ji).
  const struct { int i, j; double phase; } bonds[] = {
      {0, 2, 0.0}, {2, 1, two_pi / 3.0}, {0, 1, 2.0 * two_pi / 3.0}};
  for (const auto& b : bonds) {
    Matrix x = Matrix::Zero(3, 3);
    x(b.i, b.j) = 1.0;
    x(b.j, b.i) = 1.0;
    add_cos_term(comps, 3, 1, b.phase, p.j, x);
  }
  return FourierHamiltonian(3, p.omega_m, std::move(comps));
}

FourierHamiltonian build_three_level_first_frame(const ThreeLevelFirstFrame& p) {
  if (p.omega_m <= 0.0) throw InvalidParameter("omega_m must be positive");
  if (p.j < 0.0) throw InvalidParameter("J must be non-negative");
  if (p.delta <= 0.0) throw InvalidParameter("Delta must be positive");
  const double rel = 1e-9 * p.delta;
  if (std::abs(0.5 * p.omega1 - p.delta) > rel || std::abs(0.5 * p.omega2 - p.delta) > rel)
    throw InvalidParameter("first-frame driving requires Omega1/2 = Omega2/2 = Delta");
  const double ratio = p.delta / p.omega_m;
  const int big_m = static_cast<int>(std::llround(ratio));
  if (big_m < 1 || std::abs(ratio - big_m) > 1e-9 * std::max(1.0, ratio))
    throw InvalidParameter("Delta must be a positive integer multiple of omega_m");

  std::map<int, Matrix> comps;
  Matrix h0 = Matrix::Zero(3, 3);
  h0(0, 1) = h0(1, 0) = 0.5 * p.omega2;
  h0(1, 2) = h0(2, 1) = 0.5 * p.omega1;
  h0(1, 1) = p.delta;
  comps[0] = h0;

  // Basis (|-1>, |0>, |+1>): ε2 enters at (0,1) as +i ε2(t), ε1 at (1,2) as +i ε1(t).
  Matrix x1 = Matrix::Zero(3, 3), x2 = Matrix::Zero(3, 3);
  x1(1, 2) = I;
  x1(2, 1) = -I;
  x2(0, 1) = I;
  x2(1, 0) = -I;

  // ε(t) = Σ A sin(kΔt)cos(ω_m t + φ) with sin(a)cos(b) = [sin(a+b) + sin(a-b)]/2.
  auto add_modulation = [&](const Matrix& x, int k, double phase, double amp) {
    add_sin_term(comps, 3, k * big_m + 1, phase, 0.5 * amp, x);
    add_sin_term(comps, 3, k * big_m - 1, -phase, 0.5 * amp, x);
  };
  // ε1(t) = 2√3 J sin(2Δt)cos(ω_m t + 2π/3) - 2√2 J sin(3Δt)cos(ω_m t)
  add_modulation(x1, 2, two_pi / 3.0, 2.0 * std::sqrt(3.0) * p.j);
  add_modulation(x1, 3, 0.0, -2.0 * std::sqrt(2.0) * p.j);
  // ε2(t) = 2√6 J sin(Δt)cos(ω_m t + 4π/3)
  add_modulation(x2, 1, 2.0 * two_pi / 3.0, 2.0 * std::sqrt(6.0) * p.j);

  return FourierHamiltonian(3, p.omega_m, std::move(comps));
}

FourierHamiltonian build_hamiltonian(const DriveSpec& spec) {
  return std::visit(
      [](const auto& p) -> FourierHamiltonian {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PhaseModTLS>) return build_interaction_tls(p);
        else if constexpr (std::is_same_v<T, AmpModTLS>) return build_amp_mod_tls(p);
        else if constexpr (std::is_same_v<T, ThreeLevelRotating>) return build_three_level_rotating(p);
        else return build_three_level_first_frame(p);
      },
      spec);
}

int spec_dim(const DriveSpec& spec) {
  return std::holds_alternative<PhaseModTLS>(spec) || std::holds_alternative<AmpModTLS>(spec)
             ? 2
             : 3;
}

double spec_omega_m(const DriveSpec& spec) {
  return std::visit([](const auto& p) { return p.omega_m; }, spec);
}

std::vector<EnsembleMember> expand_ensemble(const DriveSpec& spec, const EnsembleSpec& ens) {
  if (ens.count < 1) throw InvalidParameter("ensemble count must be >= 1");
  if (ens.sigma < 0.0) throw InvalidParameter("ensemble sigma must be non-negative");
  if (!std::holds_alternative<PhaseModTLS>(spec) && !std::holds_alternative<AmpModTLS>(spec))
    throw InvalidParameter("detuning ensembles apply to two-level specs only");

  const double half = ens.span * ens.sigma;
  std::vector<EnsembleMember> members;
  members.reserve(ens.count);
  double total = 0.0;
  for (int i = 0; i < ens.count; ++i) {
    const double delta =
        ens.count == 1 ? 0.0 : -half + 2.0 * half * static_cast<double>(i) / (ens.count - 1);
    const double w =
        ens.sigma > 0.0 ? std::exp(-0.5 * (delta / ens.sigma) * (delta / ens.sigma)) : 1.0;
    DriveSpec member = spec;
    std::visit(
        [&](auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, PhaseModTLS> || std::is_same_v<T, AmpModTLS>)
            p.delta = delta;
        },
        member);
    members.push_back({std::move(member), delta, w});
    total += w;
  }
  for (auto& m : members) m.weight /= total;
  return members;
}

Vector tls_ket0() { return (Vector(2) << 1, 0).finished(); }
Vector tls_ket1() { return (Vector(2) << 0, 1).finished(); }
Vector tls_plus() { return (Vector(2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)).finished(); }
Vector tls_plus_i() {
  return (Vector(2) << 1.0 / std::sqrt(2.0), Cx(0.0, 1.0 / std::sqrt(2.0))).finished();
}

Matrix three_level_v() {
  Matrix v = Matrix::Ones(3, 3);
  v.diagonal().setZero();
  return v;
}

Vector three_level_e(int k) {
  switch (k) {
    case 1: return (Vector(3) << 1, 1, 1).finished() / std::sqrt(3.0);
    case 2: return (Vector(3) << -2, 1, 1).finished() / std::sqrt(6.0);
    case 3: return (Vector(3) << 0, 1, -1).finished() / std::sqrt(2.0);
    default: throw InvalidParameter("three_level_e expects k in {1,2,3}");
  }
}

Matrix rotation3() {
  Matrix r = Matrix::Zero(3, 3);
  r(0, 1) = 1.0;
  r(1, 2) = 1.0;
  r(2, 0) = 1.0;
  return r;
}

Vector map_first_frame_state(const ThreeLevelFirstFrame& p, double t, const Vector& psi_first) {
  if (psi_first.size() != 3) throw InvalidParameter("first-frame state must have dimension 3");
  // Static-basis columns (dressed states for eigenvalues 2Δ, 0, -Δ); the signs are
  // pinned so the dressed-frame coupling phases land in the documented slots.
  Matrix t_s(3, 3);
  t_s.col(0) = (Vector(3) << 1, 2, 1).finished() / std::sqrt(6.0);
  t_s.col(1) = (Vector(3) << 1, 0, -1).finished() / std::sqrt(2.0);
  t_s.col(2) = (Vector(3) << 1, -1, 1).finished() / std::sqrt(3.0);
  Vector dressed = t_s.adjoint() * psi_first;
  dressed(0) *= std::exp(I * (2.0 * p.delta * t));
  dressed(2) *= std::exp(-I * (p.delta * t));
  // Dressed ordering is the reversed spin ordering; flip back to (|-1>,|0>,|+1>).
  return dressed.reverse();
}

}  // namespace floq
