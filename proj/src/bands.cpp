#include "floquet/bands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>
#include <utility>

#include "floquet/errors.hpp"
#include "floquet/kernels.hpp"

namespace floq {

namespace {

int dipole_order_limit(const FloquetModes& m) { return std::max(2 * m.kmax - 1, 0); }

// Σ_p Φ_p^μ† (V Φ^ν)_{p−n} with w_nu = V·components[ν] precomputed.
Cx dipole_from_product(const Matrix& phi_mu, const Matrix& w_nu, int kmax, int n) {
  Cx acc(0.0, 0.0);
  const int plo = std::max(-kmax, -kmax + n);
  const int phi = std::min(kmax, kmax + n);
  for (int p = plo; p <= phi; ++p) acc += phi_mu.col(p + kmax).dot(w_nu.col(p - n + kmax));
  return acc;
}

void check_mode_pair(const FloquetModes& m, int mu, int nu) {
  if (mu < 0 || mu >= m.dim || nu < 0 || nu >= m.dim)
    throw InvalidParameter("mode index out of range");
}

std::vector<Matrix> probe_products(const FloquetModes& m, const Matrix& vmat) {
  std::vector<Matrix> w(m.dim);
  for (int nu = 0; nu < m.dim; ++nu) w[nu] = vmat * m.components[nu];
  return w;
}

bool band_order(const BandAmplitude& a, const BandAmplitude& b) {
  if (a.frequency != b.frequency) return a.frequency < b.frequency;
  if (a.n != b.n) return a.n < b.n;
  if (a.mu != b.mu) return a.mu < b.mu;
  return a.nu < b.nu;
}

// Sample spacing of a uniform grid; rejects anything else.
double uniform_dt(const std::vector<double>& times) {
  if (times.size() < 2) throw InvalidParameter("trace needs at least two samples");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw NonuniformGrid("sample times must increase");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * dt)
      throw NonuniformGrid("sample spacing varies at index " + std::to_string(i));
  return dt;
}

[[noreturn]] void rethrow_with_value(double value, std::exception_ptr err) {
  const std::string prefix = "sweep value " + format_g9(value) + ": ";
  try {
    std::rethrow_exception(err);
  } catch (const TruncationTooSmall& e) {
    throw TruncationTooSmall(prefix + e.what());
  } catch (const DegenerateSelection& e) {
    throw DegenerateSelection(prefix + e.what());
  } catch (const SingularBasis& e) {
    throw SingularBasis(prefix + e.what());
  } catch (const StepTooLarge& e) {
    throw StepTooLarge(prefix + e.what());
  } catch (const NonuniformGrid& e) {
    throw NonuniformGrid(prefix + e.what());
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(prefix + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const FloquetError& e) {
    throw FloquetError(prefix + e.what());
  } catch (const std::exception& e) {
    throw FloquetError(prefix + e.what());
  }
}

}  // namespace

Cx dipole_element(const FloquetModes& m, const ProbeOperator& v, int mu, int nu, int n) {
  check_mode_pair(m, mu, nu);
  if (v.matrix.rows() != m.dim) throw InvalidParameter("probe dimension mismatch");
  if (std::abs(n) > dipole_order_limit(m))
    throw InvalidParameter("dipole order " + std::to_string(n) +
                           " outside the resolved window for K = " + std::to_string(m.kmax));
  const Matrix w = v.matrix * m.components[nu];
  return dipole_from_product(m.components[mu], w, m.kmax, n);
}

std::vector<BandAmplitude> band_amplitudes(const FloquetModes& m, const Vector& coeffs,
                                           const ProbeOperator& v, int n_max) {
  if (coeffs.size() != m.dim) throw InvalidParameter("coefficient count mismatch");
  if (v.matrix.rows() != m.dim) throw InvalidParameter("probe dimension mismatch");
  if (n_max < 0 || n_max > dipole_order_limit(m))
    throw InvalidParameter("band order range outside the resolved window");
  if (!(v.norm > 0.0)) throw InvalidParameter("probe operator is zero");

  const auto w = probe_products(m, v.matrix);
  const double tol = 1e-6 * m.omega_m;
  Cx dc(0.0, 0.0);
  std::vector<BandAmplitude> out;
  for (int n = -n_max; n <= n_max; ++n) {
    Cx pooled(0.0, 0.0);
    for (int mu = 0; mu < m.dim; ++mu)
      pooled += std::norm(coeffs(mu)) *
                dipole_from_product(m.components[mu], w[mu], m.kmax, n) / v.norm;
    const double f_center = n * m.omega_m;
    if (f_center > tol)
      out.push_back({-1, -1, n, f_center, 2.0 * pooled});
    else if (f_center >= -tol)
      dc += pooled;

    for (int mu = 0; mu < m.dim; ++mu)
      for (int nu = 0; nu < m.dim; ++nu) {
        if (mu == nu) continue;
        const Cx term = std::conj(coeffs(mu)) * coeffs(nu) *
                        dipole_from_product(m.components[mu], w[nu], m.kmax, n) / v.norm;
        const double f = n * m.omega_m + m.quasi_energies(mu) - m.quasi_energies(nu);
        if (f > tol)
          out.push_back({mu, nu, n, f, 2.0 * term});
        else if (f >= -tol)
          dc += term;
      }
  }
  std::sort(out.begin(), out.end(), band_order);
  out.insert(out.begin(), BandAmplitude{-1, -1, 0, 0.0, dc});
  return out;
}

std::vector<BandAmplitude> pool_bands(const std::vector<BandAmplitude>& bands, double tol) {
  if (!(tol >= 0.0)) throw InvalidParameter("pooling tolerance must be nonnegative");
  std::vector<BandAmplitude> sorted = bands;
  std::sort(sorted.begin(), sorted.end(), band_order);
  std::vector<BandAmplitude> out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    BandAmplitude rep = sorted[i];
    Cx sum = sorted[i].amplitude;
    while (j < sorted.size() && sorted[j].frequency - sorted[i].frequency <= tol) {
      if (std::abs(sorted[j].amplitude) > std::abs(rep.amplitude)) rep = sorted[j];
      sum += sorted[j].amplitude;
      ++j;
    }
    rep.amplitude = sum;
    out.push_back(rep);
    i = j;
  }
  return out;
}

Spectrum fft_spectrum(const RabiTrace& r, bool hann) {
  if (r.values.size() != r.times.size()) throw InvalidParameter("trace size mismatch");
  const int n = static_cast<int>(r.times.size());
  const double dt = uniform_dt(r.times);

  std::vector<double> x(r.values);
  double wsum = static_cast<double>(n);
  if (hann) {
    // Periodic form: a bin-centered tone then reads exactly A with ±A/2 neighbors.
    wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = 0.5 * (1.0 - std::cos(two_pi * i / n));
      x[i] *= w;
      wsum += w;
    }
  }

  const int bins = n / 2 + 1;
  std::vector<Cx> coef;
  kern::dft_real(x, bins, coef);

  Spectrum s;
  s.frequencies.resize(bins);
  s.magnitudes.resize(bins);
  for (int k = 0; k < bins; ++k) {
    s.frequencies(k) = k / (n * dt) / 1e6;
    double mag = std::abs(coef[k]) / wsum;
    if (k > 0 && !(n % 2 == 0 && k == n / 2)) mag *= 2.0;
    s.magnitudes(k) = mag;
  }
  return s;
}

RealVector projected_magnitudes(const RabiTrace& r, const RealVector& frequencies) {
  if (r.values.size() != r.times.size()) throw InvalidParameter("trace size mismatch");
  const int n = static_cast<int>(r.times.size());
  const int nf = static_cast<int>(frequencies.size());
  if (nf == 0) return RealVector(0);
  if (n < 3) throw InvalidParameter("trace too short for projection");
  const double span = r.times.back() - r.times.front();
  if (!(span > 0.0)) throw InvalidParameter("trace has zero duration");
  const double tol = 0.25 * two_pi / span;

  // Group near-coincident frequencies onto one fitted line each.
  std::vector<double> groups;
  std::vector<int> group_of(nf);
  for (int i = 0; i < nf; ++i) {
    const double f = std::abs(frequencies(i));
    int g = -1;
    for (std::size_t k = 0; k < groups.size(); ++k)
      if (std::abs(groups[k] - f) <= tol) {
        g = static_cast<int>(k);
        break;
      }
    if (g < 0) {
      groups.push_back(f);
      g = static_cast<int>(groups.size()) - 1;
    }
    group_of[i] = g;
  }

  std::vector<int> col_of(groups.size(), 0);
  int cols = 1;
  for (std::size_t k = 0; k < groups.size(); ++k)
    if (groups[k] > tol) {
      col_of[k] = cols;
      cols += 2;
    }
  if (n < cols) throw InvalidParameter("too few samples for the requested projection");

  RealMatrix a(n, cols);
  RealVector b(n);
  for (int i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    b(i) = r.values[i];
    for (std::size_t k = 0; k < groups.size(); ++k)
      if (groups[k] > tol) {
        a(i, col_of[k]) = std::cos(groups[k] * r.times[i]);
        a(i, col_of[k] + 1) = std::sin(groups[k] * r.times[i]);
      }
  }
  const RealVector c = a.colPivHouseholderQr().solve(b);

  RealVector out(nf);
  for (int i = 0; i < nf; ++i) {
    const std::size_t k = group_of[i];
    out(i) = groups[k] > tol ? std::hypot(c(col_of[k]), c(col_of[k] + 1)) : std::abs(c(0));
  }
  return out;
}

DriveSpec apply_parameter(const DriveSpec& spec, const std::string& path, double value) {
  return std::visit(
      [&](auto s) -> DriveSpec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PhaseModTLS> || std::is_same_v<T, AmpModTLS>) {
          if (path == "epsilon_m")
            s.epsilon_m = value;
          else if (path == "two_eps_over_omega_m")
            s.epsilon_m = 0.5 * value * s.omega_m;
          else if (path == "phi")
            s.phi = value;
          else if (path == "omega")
            s.omega = value;
          else if (path == "delta")
            s.delta = value;
          else if (path == "omega_m")
            s.omega_m = value;
          else
            throw ConfigError("unknown sweep parameter '" + path + "' for a TLS drive");
        } else if constexpr (std::is_same_v<T, ThreeLevelRotating>) {
          if (path == "j")
            s.j = value;
          else if (path == "two_j_over_omega_m")
            s.j = 0.5 * value * s.omega_m;
          else if (path == "omega_m")
            s.omega_m = value;
          else
            throw ConfigError("unknown sweep parameter '" + path +
                              "' for the rotating three-level drive");
        } else {
          static_assert(std::is_same_v<T, ThreeLevelFirstFrame>);
          if (path == "j")
            s.j = value;
          else if (path == "two_j_over_omega_m")
            s.j = 0.5 * value * s.omega_m;
          else if (path == "delta")
            s.delta = value;
          else if (path == "omega_m")
            s.omega_m = value;
          else
            throw ConfigError("unknown sweep parameter '" + path +
                              "' for the first-frame three-level drive");
        }
        return s;
      },
      spec);
}

SpectrumMap sweep_spectrum(const DriveSpec& base, const SweepOptions& opt,
                           const ProbeOperator& v) {
  if (opt.values.empty()) throw ConfigError("sweep has no values");
  if (opt.samples < 2) throw ConfigError("sweep needs at least two samples per trace");
  if (!(opt.t_end > 0.0)) throw ConfigError("sweep trace length must be positive");
  if (opt.psi0.size() != spec_dim(base)) throw ConfigError("initial state dimension mismatch");
  if (std::abs(opt.psi0.norm() - 1.0) > 1e-8) throw ConfigError("initial state must be normalized");
  (void)apply_parameter(base, opt.parameter, opt.values.front());

  const auto times = sample_times(opt.t_end, opt.samples);
  const std::size_t npts = opt.values.size();
  const bool ensemble = opt.ensemble.sigma > 0.0 && opt.ensemble.count > 1;

  std::vector<RealVector> rows(npts);
  std::vector<std::exception_ptr> errors(npts);
  RealVector frequencies;

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= npts) return;
      try {
        const DriveSpec point = apply_parameter(base, opt.parameter, opt.values[i]);
        std::vector<EnsembleMember> members;
        if (ensemble)
          members = expand_ensemble(point, opt.ensemble);
        else
          members.push_back({point, 0.0, 1.0});

        std::vector<double> avg(times.size(), 0.0);
        for (const auto& member : members) {
          const FourierHamiltonian h = build_hamiltonian(member.spec);
          const FloquetModes modes = solve_modes(h, opt.kblocks);
          const Vector c = initial_coefficients(modes, opt.psi0);
          const EvolutionTrace trace = floquet_evolve(modes, c, times);
          const RabiTrace rabi = weighted_rabi(trace, v);
          for (std::size_t t = 0; t < avg.size(); ++t) avg[t] += member.weight * rabi.values[t];
        }
        const Spectrum s = fft_spectrum({times, std::move(avg)}, opt.hann);
        rows[i] = s.magnitudes;
        if (i == 0) frequencies = s.frequencies;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  int nthreads = opt.threads > 0
                     ? opt.threads
                     : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = std::min<std::size_t>(nthreads, npts);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < npts; ++i)
    if (errors[i]) rethrow_with_value(opt.values[i], errors[i]);

  SpectrumMap map;
  map.parameter = opt.parameter;
  map.sweep_values = opt.values;
  map.frequencies = frequencies;
  map.magnitudes.resize(npts, frequencies.size());
  for (std::size_t i = 0; i < npts; ++i) map.magnitudes.row(i) = rows[i];
  return map;
}

void write_spectrum_csv(const SpectrumMap& map, std::ostream& os) {
  os << "sweep_value,frequency_mhz,magnitude\n";
  for (std::size_t i = 0; i < map.sweep_values.size(); ++i) {
    const std::string sv = format_g9(map.sweep_values[i]);
    for (int k = 0; k < map.frequencies.size(); ++k)
      os << sv << ',' << format_g9(map.frequencies(k)) << ',' << format_g9(map.magnitudes(i, k))
         << '\n';
  }
}

Vector susceptibility_scan(const FloquetModes& m, const ProbeOperator& v,
                           const SusceptibilityParams& params, int n,
                           const RealVector& omega_p1) {
  if (v.matrix.rows() != m.dim) throw InvalidParameter("probe dimension mismatch");
  if (params.populations.size() != m.dim)
    throw InvalidParameter("population count must match the mode count");
  if (params.populations.minCoeff() < -1e-12)
    throw InvalidParameter("populations must be nonnegative");
  if (std::abs(params.populations.sum() - 1.0) > 1e-8)
    throw InvalidParameter("populations must sum to 1");
  if (!(params.gamma > 0.0)) throw InvalidParameter("dephasing rate must be positive");

  const int mlim = dipole_order_limit(m);
  const auto w = probe_products(m, v.matrix);
  // table[r + mlim](mu, nu) = V_{mu,nu}^{(r)}
  std::vector<Matrix> table(2 * mlim + 1, Matrix(m.dim, m.dim));
  for (int r = -mlim; r <= mlim; ++r)
    for (int mu = 0; mu < m.dim; ++mu)
      for (int nu = 0; nu < m.dim; ++nu)
        table[r + mlim](mu, nu) = dipole_from_product(m.components[mu], w[nu], m.kmax, r);

  Vector out(omega_p1.size());
  for (int j = 0; j < omega_p1.size(); ++j) {
    Cx acc(0.0, 0.0);
    for (int mu = 0; mu < m.dim; ++mu)
      for (int nu = 0; nu < m.dim; ++nu) {
        if (mu == nu) continue;  // p_ν − p_μ = 0 kills the term
        const double pdiff = params.populations(nu) - params.populations(mu);
        if (pdiff == 0.0) continue;
        for (int k = -mlim; k <= mlim; ++k) {
          const int r = -n - k;
          if (std::abs(r) > mlim) continue;
          const Cx num = table[r + mlim](nu, mu) * table[k + mlim](mu, nu) * pdiff;
          const Cx den(m.quasi_energies(mu) - m.quasi_energies(nu) + k * m.omega_m - omega_p1(j),
                       -params.gamma);
          acc += num / den;
        }
      }
    out(j) = Cx(0.0, 1.0) * params.coupling * params.coupling * acc;
  }
  return out;
}

Cx susceptibility(const FloquetModes& m, const ProbeOperator& v,
                  const SusceptibilityParams& params, int n, double omega_p1) {
  RealVector one(1);
  one(0) = omega_p1;
  return susceptibility_scan(m, v, params, n, one)(0);
}

}  // namespace floq
