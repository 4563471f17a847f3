#include "floquet/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "floquet/bands.hpp"
#include "floquet/errors.hpp"

namespace floq {

namespace {

void validate_descriptor(const SymmetryDescriptor& s, int dim) {
  if (s.s.rows() != dim || s.s.cols() != dim)
    throw InvalidParameter(s.name + ": operator dimension does not match the system");
  if (s.alpha != 1 && s.alpha != -1)
    throw InvalidParameter(s.name + ": alpha must be +1 or -1");
  if (s.beta != 1 && s.beta != -1)
    throw InvalidParameter(s.name + ": beta must be +1 or -1");
  if (!(s.t_s >= 0.0 && s.t_s < 1.0))
    throw InvalidParameter(s.name + ": t_s must lie in [0, 1)");
  const Matrix id = Matrix::Identity(dim, dim);
  if ((s.s.adjoint() * s.s - id).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidParameter(s.name + ": operator is not unitary within 1e-12");
  if (s.conjugates) {
    const Matrix ss = s.s * s.s.conjugate();
    if (std::min((ss - id).cwiseAbs().maxCoeff(), (ss + id).cwiseAbs().maxCoeff()) > 1e-10)
      throw InvalidParameter(s.name + ": particle-hole candidates need S conj(S) = +/- Identity");
  }
}

void validate_phases(const SymmetryPhases& ph, int dim, const std::string& name) {
  if (ph.q < 1) throw InvalidParameter(name + ": symmetry order q must be positive");
  if (ph.pi.size() != dim || static_cast<int>(ph.m_labels.size()) != dim ||
      static_cast<int>(ph.partner.size()) != dim)
    throw InvalidParameter(name + ": phase table size does not match the mode count");
  std::vector<int> hit(dim, 0);
  for (int mu = 0; mu < dim; ++mu) {
    if (std::abs(std::abs(ph.pi(mu)) - 1.0) > 1e-8)
      throw InvalidParameter(name + ": |pi| must equal 1");
    if (ph.m_labels[mu] < 0 || ph.m_labels[mu] >= ph.q)
      throw InvalidParameter(name + ": m label outside [0, q)");
    if (ph.partner[mu] < 0 || ph.partner[mu] >= dim || hit[ph.partner[mu]]++)
      throw InvalidParameter(name + ": partner map is not a permutation");
  }
}

// Index k with z = e^{i 2π k / q}, or -1 when z is no q-th root within tol.
int root_label(Cx z, int q, double tol) {
  const int k = static_cast<int>(((std::lround(std::arg(z) * q / two_pi) % q) + q) % q);
  return std::abs(z - std::polar(1.0, two_pi * k / q)) <= tol ? k : -1;
}

bool band_before(const BandVerdict& a, const BandVerdict& b) {
  if (a.frequency != b.frequency) return a.frequency < b.frequency;
  if (a.n != b.n) return a.n < b.n;
  if (a.mu != b.mu) return a.mu < b.mu;
  return a.nu < b.nu;
}

FloquetModes solve_escalating(const FourierHamiltonian& h, int kblocks) {
  if (kblocks > 0) return solve_modes(h, kblocks);
  constexpr int ladder[] = {16, 24, 36, 54, 81};
  constexpr int last = sizeof(ladder) / sizeof(ladder[0]) - 1;
  for (int i = 0;; ++i) {
    try {
      return solve_modes(h, ladder[i]);
    } catch (const TruncationTooSmall&) {
      if (i == last) throw;
    }
  }
}

double smallest_gap(const DriveSpec& spec, const std::string& path, double x, int kblocks) {
  const auto m = solve_escalating(build_hamiltonian(apply_parameter(spec, path, x)), kblocks);
  double g = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < m.dim; ++i) g = std::min(g, m.quasi_energies(i + 1) - m.quasi_energies(i));
  return g;
}

}  // namespace

double verify_symmetry(const FourierHamiltonian& h, const SymmetryDescriptor& s) {
  validate_descriptor(s, h.dim());
  const double T = h.period();
  double worst = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double t = T * j / 64.0;
    Matrix ht = h.sample(s.beta * t + s.t_s * T);
    if (s.conjugates) ht = ht.conjugate();
    const Matrix diff = s.s * ht * s.s.adjoint() - static_cast<double>(s.alpha) * h.sample(t);
    // Both terms are Hermitian, so the spectral norm is the extreme eigenvalue.
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    worst = std::max(worst, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return worst;
}

SymmetryPhases mode_symmetry_phases(const FloquetModes& m, const SymmetryDescriptor& s, int q) {
  validate_descriptor(s, m.dim);
  if (s.beta != 1)
    throw InvalidParameter(s.name + ": phase extraction supports beta = +1 only");
  if (q < 1) throw InvalidParameter("symmetry order q must be positive");
  for (int i = 0; i + 1 < m.dim; ++i)
    if (m.quasi_energies(i + 1) - m.quasi_energies(i) < 1e-9 * m.omega_m)
      throw AmbiguousAtDegeneracy("quasi-energies " + format_g9(m.quasi_energies(i)) + " and " +
                                  format_g9(m.quasi_energies(i + 1)) +
                                  " coincide; mode phases are gauge mixtures");

  const double T = two_pi / m.omega_m;
  constexpr int grid = 64;
  std::vector<Matrix> base(grid);
  std::vector<RealVector> base_norm(grid);
  for (int j = 0; j < grid; ++j) {
    base[j] = Matrix(m.dim, m.dim);
    base_norm[j] = RealVector(m.dim);
    for (int cand = 0; cand < m.dim; ++cand) {
      base[j].col(cand) = mode_at_time(m, cand, T * j / grid);
      base_norm[j](cand) = base[j].col(cand).norm();
    }
  }

  SymmetryPhases out;
  out.q = q;
  out.pi = Vector(m.dim);
  out.m_labels.assign(m.dim, 0);
  out.partner.assign(m.dim, 0);
  for (int mu = 0; mu < m.dim; ++mu) {
    Matrix inner(m.dim, grid);
    RealMatrix ovl(m.dim, grid);
    for (int j = 0; j < grid; ++j) {
      Vector w = mode_at_time(m, mu, T * j / grid + s.t_s * T);
      if (s.conjugates) w = w.conjugate();
      w = s.s * w;
      const double wn = w.norm();
      inner.col(j) = base[j].adjoint() * w;
      for (int cand = 0; cand < m.dim; ++cand)
        ovl(cand, j) = std::abs(inner(cand, j)) / (wn * base_norm[j](cand));
    }
    int best = 0;
    double best_worst = -1.0;
    for (int cand = 0; cand < m.dim; ++cand) {
      const double w = ovl.row(cand).minCoeff();
      if (w > best_worst) {
        best_worst = w;
        best = cand;
      }
    }
    if (best_worst < 1.0 - 1e-3)
      throw NoMatchingMode(s.name + ": transformed mode " + std::to_string(mu) +
                           " overlaps no solved mode above 1 - 1e-3 (best " +
                           format_g9(best_worst) + ")");
    if (best_worst < 1.0 - 1e-6)
      throw AmbiguousAtDegeneracy(s.name + ": overlap " + format_g9(best_worst) + " for mode " +
                                  std::to_string(mu) +
                                  " sits between the match and failure thresholds");
    // |Φ^{μ'}(t)⟩ = π_μ · S C[Φ^μ(t + t_s T)], so π_μ = conj of the inner-product phase.
    Cx mean(0.0, 0.0);
    for (int j = 0; j < grid; ++j) mean += std::conj(inner(best, j) / std::abs(inner(best, j)));
    mean /= static_cast<double>(grid);
    if (std::abs(mean) < 0.5)
      throw NoMatchingMode(s.name + ": matching phase wanders around the unit circle");
    const Cx pi_mu = mean / std::abs(mean);
    double disp = 0.0;
    for (int j = 0; j < grid; ++j)
      disp = std::max(disp, std::abs(std::conj(inner(best, j) / std::abs(inner(best, j))) - pi_mu));
    if (disp > 1e-6)
      throw NoMatchingMode(s.name + ": matching phase dispersion " + format_g9(disp) +
                           " exceeds 1e-6");
    const int label = root_label(pi_mu, q, 1e-4);
    if (label < 0)
      throw NoMatchingMode(s.name + ": pi = " + format_g9(pi_mu.real()) + " + " +
                           format_g9(pi_mu.imag()) + "i is no order-" + std::to_string(q) +
                           " root of unity");
    out.pi(mu) = pi_mu;
    out.m_labels[mu] = label;
    out.partner[mu] = best;
  }
  return out;
}

SelectionRuleReport predict_selection_rules(
    const FloquetModes& m,
    const std::vector<std::pair<SymmetryDescriptor, SymmetryPhases>>& symmetries,
    const ProbeOperator& v, const Vector& coeffs, int n_max) {
  if (n_max < 0) throw InvalidParameter("band order limit must be nonnegative");
  if (coeffs.size() != m.dim)
    throw InvalidParameter("coefficient count does not match the mode count");
  if (!(v.norm > 0.0)) throw InvalidParameter("probe operator is zero");

  SelectionRuleReport rep;

  struct Rule {
    const SymmetryDescriptor* s = nullptr;
    const SymmetryPhases* ph = nullptr;
    bool usable = false;
    std::string label;
    int ka = 0;              // q-th-root index of alpha_V (rotations)
    double alpha_pm = 1.0;   // real alpha_V (particle-hole)
  };
  std::vector<Rule> rules;
  for (const auto& [s, ph] : symmetries) {
    validate_descriptor(s, m.dim);
    validate_phases(ph, m.dim, s.name);
    Rule r;
    r.s = &s;
    r.ph = &ph;
    r.label = s.name + (s.approximate ? " (approximate — valid for Ω ≪ ω_m)" : "");
    const Matrix target = s.conjugates ? Matrix(v.matrix.conjugate()) : v.matrix;
    const Matrix mapped = s.s * v.matrix * s.s.adjoint();
    int imax = 0, jmax = 0;
    target.cwiseAbs().maxCoeff(&imax, &jmax);
    const double vmax = std::abs(target(imax, jmax));
    const Cx alpha = mapped(imax, jmax) / target(imax, jmax);
    if ((mapped - alpha * target).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, vmax)) {
      rep.notes.push_back(s.name + ": probe has no scalar alpha_V under this symmetry; no rule");
    } else if (!s.conjugates) {
      r.ka = root_label(alpha, ph.q, 1e-8);
      if (r.ka < 0)
        rep.notes.push_back(s.name + ": alpha_V is no order-" + std::to_string(ph.q) +
                            " root of unity; no rule");
      else
        r.usable = true;
    } else {
      if (std::abs(alpha.imag()) > 1e-8 || std::abs(std::norm(alpha) - 1.0) > 1e-8 ||
          std::abs(alpha.real() * alpha.real() - 1.0) > 1e-8)
        rep.notes.push_back(s.name + ": alpha_V is not +/-1; no rule");
      else {
        r.alpha_pm = alpha.real() > 0.0 ? 1.0 : -1.0;
        r.usable = true;
      }
    }
    rules.push_back(r);
  }

  const double ftol = 1e-6 * m.omega_m;
  auto& bands = rep.bands;
  for (int n = 1; n <= n_max; ++n)
    bands.push_back({"centerband", -1, -1, n, n * m.omega_m, "visible", "none", Cx(1.0, 0.0)});
  for (int n = -n_max; n <= n_max; ++n)
    for (int mu = 0; mu < m.dim; ++mu)
      for (int nu = 0; nu < m.dim; ++nu) {
        if (mu == nu) continue;
        const double f = n * m.omega_m + m.quasi_energies(mu) - m.quasi_energies(nu);
        if (f > ftol)
          bands.push_back({"sideband", mu, nu, n, f, "visible", "none", Cx(1.0, 0.0)});
      }
  std::sort(bands.begin(), bands.end(), band_before);

  for (auto& b : bands) {
    for (const auto& r : rules) {
      if (!r.usable || b.verdict != "visible") continue;
      if (!r.s->conjugates) {
        // Geometric q-fold factor; exact in the integer root labels.
        const int q = r.ph->q;
        const int dm =
            b.band_class == "centerband" ? 0 : r.ph->m_labels[b.mu] - r.ph->m_labels[b.nu];
        if (((dm - b.n + r.ka) % q + q) % q != 0) {
          b.verdict = "spDS";
          b.mechanism = r.label + ": q-fold factor sum_j (pi_mu pi_nu* e^{-i2pi n/q} alpha_V)^j = 0";
          b.factor = Cx(0.0, 0.0);
        }
        continue;
      }
      // Particle-hole relation in Fourier components:
      //   V_{mu',nu'}^{(n)} = alpha_V conj(pi_mu) pi_nu e^{i2pi n t_s} V_{nu,mu}^{(n)}.
      if (b.band_class == "sideband") {
        if (r.ph->partner[b.nu] == b.mu && r.ph->partner[b.mu] == b.nu) {
          const Cx f = r.alpha_pm * std::conj(r.ph->pi(b.mu)) * r.ph->pi(b.nu) *
                       std::polar(1.0, two_pi * b.n * r.s->t_s);
          if (std::abs(f - 1.0) > 1e-6) {
            b.verdict = "spDS";
            b.mechanism = r.label + ": conjugation maps the element to F times itself, F != 1";
            b.factor = 1.0 + f;
          }
        }
        continue;
      }
      // Pooled centerband: diagonal elements linked pairwise, pi factors cancel.
      const Cx x = r.alpha_pm * std::polar(1.0, two_pi * b.n * r.s->t_s);
      if (std::abs(x - 1.0) <= 1e-6) continue;
      bool all_self = true;
      double imbalance = 0.0;
      for (int mu = 0; mu < m.dim; ++mu) {
        if (r.ph->partner[mu] == mu) continue;
        all_self = false;
        imbalance = std::max(
            imbalance, std::abs(std::norm(coeffs(mu)) - std::norm(coeffs(r.ph->partner[mu]))));
      }
      if (all_self) {
        b.verdict = "spDS";
        b.mechanism = r.label + ": every diagonal element obeys V = x V with x != 1";
        b.factor = 1.0 + x;
      } else if (std::abs(x + 1.0) <= 1e-6 && imbalance <= 1e-6) {
        b.verdict = "accidental-dark";
        b.mechanism =
            r.label + ": centerband interference, V_mu,mu = -V_mu',mu' with equal mode weights";
        b.factor = Cx(imbalance, 0.0);
      }
    }
  }

  // Interference between the two members of a degenerate sideband pair. The
  // linked amplitudes sum to a bracket |c^mu* c^nu + x (c^mu* c^nu)*| whose x
  // carries the relation phase; classify only when the bracket collapses or
  // doubles. A single conjugating symmetry with self-partnered modes links the
  // pair directly; two conjugating symmetries compose to a linear relation
  // whose partner map is the composition.
  auto classify_pair = [&](BandVerdict& b, Cx x, const std::string& label) {
    // Only x = -1 carries selection content: x = +1 relations hold trivially at
    // the order where both elements survive, so they never force interference.
    if (std::abs(x + 1.0) > 1e-6) return;
    if (std::abs(m.quasi_energies(b.mu) - m.quasi_energies(b.nu)) >= 1e-4 * m.omega_m) return;
    const Cx zmn = std::conj(coeffs(b.mu)) * coeffs(b.nu);
    if (std::abs(zmn) < 1e-12) return;
    const Cx sum = zmn + x * std::conj(zmn);
    if (std::abs(sum) < 1e-6 * std::abs(zmn)) {
      b.verdict = "siT-destructive";
      b.mechanism = label + ": degenerate pair cancels, c^mu* c^nu = -x (c^mu* c^nu)*";
      b.factor = x;
    } else if (std::abs(sum) > 1.9 * std::abs(zmn)) {
      b.verdict = "constructive";
      b.mechanism = label + ": degenerate pair adds, c^mu* c^nu = x (c^mu* c^nu)*";
      b.factor = x;
    }
  };
  for (const Rule& r : rules) {
    if (!r.usable || !r.s->conjugates) continue;
    for (auto& b : bands) {
      if (b.band_class != "sideband" || b.verdict != "visible") continue;
      if (r.ph->partner[b.mu] != b.mu || r.ph->partner[b.nu] != b.nu) continue;
      // V_{mu,nu}^{(n)} = x_s V_{nu,mu}^{(n)}; the bracket x is conj(x_s).
      const Cx xs = r.alpha_pm * std::conj(r.ph->pi(b.mu)) * r.ph->pi(b.nu) *
                    std::polar(1.0, two_pi * b.n * r.s->t_s);
      classify_pair(b, std::conj(xs), r.label);
    }
  }
  for (size_t i = 0; i < rules.size(); ++i)
    for (size_t j = i + 1; j < rules.size(); ++j) {
      const Rule& ri = rules[i];
      const Rule& rj = rules[j];
      if (!ri.usable || !rj.usable || !ri.s->conjugates || !rj.s->conjugates) continue;
      const bool approx = ri.s->approximate || rj.s->approximate;
      const std::string label = ri.s->name + " with " + rj.s->name +
                                (approx ? " (approximate — valid for Ω ≪ ω_m)" : "");
      const auto& pi_i = ri.ph->pi;
      const auto& pi_j = rj.ph->pi;
      const auto& pj = rj.ph->partner;
      for (auto& b : bands) {
        if (b.band_class != "sideband" || b.verdict != "visible") continue;
        if (ri.ph->partner[pj[b.mu]] != b.nu || ri.ph->partner[pj[b.nu]] != b.mu) continue;
        // Composite linear relation V_{g(mu),g(nu)}^{(n)} = X V_{mu,nu}^{(n)} with
        // X = alpha_i alpha_j e^{i2pi n(t_si+t_sj)} conj(sigma_mu) sigma_nu,
        // sigma_mu = pi^i_{pj(mu)} conj(pi^j_mu); g swaps the pair, so X is the bracket x.
        const Cx sig_mu = pi_i(pj[b.mu]) * std::conj(pi_j(b.mu));
        const Cx sig_nu = pi_i(pj[b.nu]) * std::conj(pi_j(b.nu));
        const Cx x = ri.alpha_pm * rj.alpha_pm *
                     std::polar(1.0, two_pi * b.n * (ri.s->t_s + rj.s->t_s)) *
                     std::conj(sig_mu) * sig_nu;
        classify_pair(b, x, label);
      }
    }

  // A fully extinguished (class, n) family is a dark band rather than a dark state.
  std::map<std::pair<std::string, int>, std::pair<int, int>> families;
  for (const auto& b : bands) {
    auto& [dark, total] = families[{b.band_class, b.n}];
    dark += b.verdict == "spDS" ? 1 : 0;
    ++total;
  }
  for (auto& b : bands) {
    const auto& [dark, total] = families[{b.band_class, b.n}];
    if (b.verdict == "spDS" && dark == total) b.verdict = "spDB";
  }
  return rep;
}

double locate_degeneracy(const DriveSpec& spec, const std::string& path, double lo, double hi,
                         int kblocks) {
  if (!(hi > lo)) throw InvalidParameter("degeneracy bracket must satisfy lo < hi");
  const double tol = 1e-5 * std::max({1.0, std::abs(lo), std::abs(hi)});
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  const double g_lo = smallest_gap(spec, path, lo, kblocks);
  const double g_hi = smallest_gap(spec, path, hi, kblocks);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double gc = smallest_gap(spec, path, c, kblocks);
  double gd = smallest_gap(spec, path, d, kblocks);
  while (b - a > tol) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - gr * (b - a);
      gc = smallest_gap(spec, path, c, kblocks);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + gr * (b - a);
      gd = smallest_gap(spec, path, d, kblocks);
    }
  }
  const double x = 0.5 * (a + b);
  const double gx = std::min({gc, gd, smallest_gap(spec, path, x, kblocks)});
  if (x - lo < 2.0 * tol || hi - x < 2.0 * tol || !(gx < (1.0 - 1e-6) * std::min(g_lo, g_hi)))
    throw NoMinimumInBracket("no interior quasi-energy gap minimum in [" + format_g9(lo) + ", " +
                             format_g9(hi) + "]");
  return x;
}

std::string interference_at_degeneracy(const FloquetModes& m, const Vector& coeffs,
                                       const ProbeOperator& v, int n) {
  if (m.dim != 2)
    throw InvalidParameter("interference verdicts are defined for two-mode systems");
  if (coeffs.size() != 2)
    throw InvalidParameter("coefficient count does not match the mode count");
  const double gap = m.quasi_energies(1) - m.quasi_energies(0);
  if (!(std::abs(gap) < 1e-4 * m.omega_m))
    throw NotDegenerate("quasi-energy gap " + format_g9(gap) + " exceeds 1e-4 omega_m");
  const Cx t01 = std::conj(coeffs(0)) * coeffs(1) * dipole_element(m, v, 0, 1, n);
  const Cx t10 = std::conj(coeffs(1)) * coeffs(0) * dipole_element(m, v, 1, 0, n);
  const double scale = std::max(std::abs(t01), std::abs(t10));
  if (scale == 0.0) return "neither";
  const double sum = std::abs(t01 + t10);
  if (sum < 1e-6 * scale) return "destructive";
  if (sum > 1.9 * scale) return "constructive";
  return "neither";
}

void write_rules_ndjson(const SelectionRuleReport& report, std::ostream& os) {
  for (const auto& b : report.bands) {
    os << "{\"class\":\"" << json_escape(b.band_class) << "\",\"mu\":" << b.mu
       << ",\"nu\":" << b.nu << ",\"n\":" << b.n
       << ",\"frequency_mhz\":" << format_g9(b.frequency / (two_pi * 1e6)) << ",\"verdict\":\""
       << json_escape(b.verdict) << "\",\"mechanism\":\"" << json_escape(b.mechanism)
       << "\",\"factor_re\":" << format_g9(b.factor.real())
       << ",\"factor_im\":" << format_g9(b.factor.imag()) << "}\n";
  }
}

}  // namespace floq
