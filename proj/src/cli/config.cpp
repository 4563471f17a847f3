#include "floquet/config.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <utility>

#include "floquet/bands.hpp"
#include "floquet/errors.hpp"
#include "json.hpp"

namespace floq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where + ": unknown key \"" + it.key() + "\"");
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing \"" + key + "\"");
  return *it;
}

double num(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) fail(where + ": \"" + std::string(key) + "\" must be a number");
  return v.get<double>();
}

double num_or(const json& j, const char* key, double dflt, const std::string& where) {
  return j.contains(key) ? num(j, key, where) : dflt;
}

int integer(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) fail(where + ": \"" + std::string(key) + "\" must be an integer");
  return v.get<int>();
}

int integer_or(const json& j, const char* key, int dflt, const std::string& where) {
  return j.contains(key) ? integer(j, key, where) : dflt;
}

bool flag_or(const json& j, const char* key, bool dflt, const std::string& where) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_boolean()) fail(where + ": \"" + std::string(key) + "\" must be a boolean");
  return v.get<bool>();
}

std::string text(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) fail(where + ": \"" + std::string(key) + "\" must be a string");
  return v.get<std::string>();
}

std::vector<double> real_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(where + " must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

// {"re": [...], "im": [...]} with "im" optional.
Vector parse_vector(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object with \"re\" (and optional \"im\") arrays");
  check_keys(j, {"re", "im"}, where);
  const auto re = real_list(need(j, "re", where), where + ".re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) {
    im = real_list(j.at("im"), where + ".im");
    if (im.size() != re.size()) fail(where + ": \"re\" and \"im\" lengths differ");
  }
  Vector v(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) v(i) = Cx(re[i], im[i]);
  return v;
}

Matrix parse_square_matrix(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object with \"re\" (and optional \"im\") row arrays");
  check_keys(j, {"re", "im"}, where);
  const json& re = need(j, "re", where);
  if (!re.is_array() || re.empty()) fail(where + ".re must be a non-empty array of rows");
  const std::size_t n = re.size();
  Matrix m = Matrix::Zero(n, n);
  auto fill = [&](const json& rows, bool imag) {
    if (!rows.is_array() || rows.size() != n) fail(where + ": matrix rows must form a square");
    for (std::size_t r = 0; r < n; ++r) {
      const auto row = real_list(rows[r], where + " row");
      if (row.size() != n) fail(where + ": matrix rows must form a square");
      for (std::size_t c = 0; c < n; ++c) m(r, c) += imag ? Cx(0.0, row[c]) : Cx(row[c], 0.0);
    }
  };
  fill(re, false);
  if (j.contains("im")) fill(j.at("im"), true);
  return m;
}

std::vector<BreakingTerm> parse_breaking(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of terms");
  std::vector<BreakingTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& t = j[i];
    const std::string here = where + "[" + std::to_string(i) + "]";
    check_keys(t, {"harmonic", "axis", "amplitude", "relative"}, here);
    BreakingTerm b;
    b.harmonic = integer(t, "harmonic", here);
    const std::string axis = text(t, "axis", here);
    if (axis.size() != 1 || (axis != "x" && axis != "y" && axis != "z"))
      fail(here + ": axis must be \"x\", \"y\" or \"z\"");
    b.axis = axis[0];
    b.amplitude = num(t, "amplitude", here);
    b.relative = flag_or(t, "relative", false, here);
    if (b.harmonic < 1) fail(here + ": harmonic must be >= 1");
    out.push_back(b);
  }
  return out;
}

DriveSpec parse_system(const json& j) {
  const std::string where = "system";
  const std::string kind = text(j, "kind", where);
  if (kind == "phase_mod_tls" || kind == "amp_mod_tls") {
    check_keys(j,
               {"kind", "omega_mhz", "epsilon_m_mhz", "omega_m_mhz", "phi", "delta_mhz",
                "breaking"},
               where);
    const double omega = num(j, "omega_mhz", where) * mhz;
    const double eps = num_or(j, "epsilon_m_mhz", 0.0, where) * mhz;
    const double wm = num(j, "omega_m_mhz", where) * mhz;
    const double phi = num_or(j, "phi", 0.0, where);
    const double delta = num_or(j, "delta_mhz", 0.0, where) * mhz;
    if (kind == "amp_mod_tls") {
      if (j.contains("breaking")) fail(where + ": breaking terms apply to phase_mod_tls only");
      return AmpModTLS{omega, eps, wm, phi, delta};
    }
    PhaseModTLS p{omega, eps, wm, phi, delta, {}};
    if (j.contains("breaking")) p.breaking = parse_breaking(j.at("breaking"), where + ".breaking");
    return p;
  }
  if (kind == "three_level_rotating") {
    check_keys(j, {"kind", "j_mhz", "omega_m_mhz"}, where);
    return ThreeLevelRotating{num(j, "j_mhz", where) * mhz, num(j, "omega_m_mhz", where) * mhz};
  }
  if (kind == "three_level_first_frame") {
    check_keys(j, {"kind", "delta_mhz", "omega1_mhz", "omega2_mhz", "j_mhz", "omega_m_mhz"},
               where);
    return ThreeLevelFirstFrame{num(j, "delta_mhz", where) * mhz, num(j, "omega1_mhz", where) * mhz,
                                num(j, "omega2_mhz", where) * mhz, num(j, "j_mhz", where) * mhz,
                                num(j, "omega_m_mhz", where) * mhz};
  }
  fail(where + ": unknown kind \"" + kind + "\"");
}

Vector parse_initial_state(const json& j, int dim) {
  const std::string where = "initial_state";
  Vector v;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (dim == 2) {
      if (name == "|0>") v = tls_ket0();
      else if (name == "|1>") v = tls_ket1();
      else if (name == "|+>") v = tls_plus();
      else if (name == "|+i>") v = tls_plus_i();
      else fail(where + ": unknown two-level state \"" + name + "\"");
    } else if (dim == 3) {
      if (name == "e1") v = three_level_e(1);
      else if (name == "e2") v = three_level_e(2);
      else if (name == "e3") v = three_level_e(3);
      else fail(where + ": unknown three-level state \"" + name + "\"");
    } else {
      fail(where + ": no named states for dimension " + std::to_string(dim));
    }
  } else {
    v = parse_vector(j, where);
    if (v.size() != dim)
      fail(where + ": explicit vector has dimension " + std::to_string(v.size()) +
           ", system has " + std::to_string(dim));
  }
  const double n = v.norm();
  if (n < 1e-12) fail(where + ": state vector is zero");
  return v / n;
}

std::string sanitize_label(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(std::tolower(c));
    else out.push_back('_');
  }
  return out;
}

std::vector<ProbeConfig> parse_probes(const json& j, int dim) {
  const std::string where = "probes";
  if (!j.is_array() || j.empty()) fail(where + " must be a non-empty array");
  std::vector<ProbeConfig> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    ProbeConfig pc;
    if (p.is_string()) {
      const std::string name = p.get<std::string>();
      pc.label = sanitize_label(name);
      if (name == "sigma_x") pc.matrix = pauli_x();
      else if (name == "sigma_y") pc.matrix = pauli_y();
      else if (name == "sigma_z") pc.matrix = pauli_z();
      else if (name == "three_level_V") pc.matrix = three_level_v();
      else fail(where + ": unknown probe \"" + name + "\"");
    } else if (p.is_object()) {
      const std::string here = where + "[" + std::to_string(i) + "]";
      check_keys(p, {"label", "re", "im"}, here);
      pc.label = p.contains("label") ? sanitize_label(text(p, "label", here))
                                     : "probe" + std::to_string(i + 1);
      pc.matrix = parse_square_matrix(p, here);
      if (!is_hermitian(pc.matrix, 1e-10)) fail(here + ": probe matrix must be Hermitian");
    } else {
      fail(where + " entries must be names or {re, im} objects");
    }
    if (pc.matrix.rows() != dim)
      fail(where + ": probe \"" + pc.label + "\" has dimension " +
           std::to_string(pc.matrix.rows()) + ", system has " + std::to_string(dim));
    for (const auto& prev : out)
      if (prev.label == pc.label) fail(where + ": duplicate probe label \"" + pc.label + "\"");
    out.push_back(std::move(pc));
  }
  return out;
}

SymmetryConfig named_symmetry(const std::string& name, int dim) {
  SymmetryConfig s;
  if (name == "parity") {
    s.descriptor = {"parity", pauli_x(), 1, 1, 0.5, false, false};
    s.q = 2;
  } else if (name == "particle_hole_p1") {
    s.descriptor = {"particle-hole P1", pauli_z(), -1, 1, 0.5, true, false};
    s.q = 2;
  } else if (name == "particle_hole_p2") {
    s.descriptor = {"particle-hole P2", Matrix::Identity(2, 2), -1, 1, 0.5, true, true};
    s.q = 2;
  } else if (name == "threefold_rotation") {
    s.descriptor = {"threefold rotation", rotation3(), 1, 1, 1.0 / 3.0, false, false};
    s.q = 3;
  } else {
    fail("symmetries: unknown name \"" + name + "\"");
  }
  if (s.descriptor.s.rows() != dim)
    fail("symmetries: \"" + name + "\" has dimension " + std::to_string(s.descriptor.s.rows()) +
         ", system has " + std::to_string(dim));
  return s;
}

std::vector<SymmetryConfig> parse_symmetries(const json& j, int dim) {
  if (!j.is_array()) fail("symmetries must be an array");
  std::vector<SymmetryConfig> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    if (e.is_string()) {
      out.push_back(named_symmetry(e.get<std::string>(), dim));
      continue;
    }
    const std::string here = "symmetries[" + std::to_string(i) + "]";
    check_keys(e, {"name", "s", "alpha", "beta", "t_s", "conjugates", "approximate", "q"}, here);
    SymmetryConfig s;
    s.descriptor.name = text(e, "name", here);
    s.descriptor.s = parse_square_matrix(need(e, "s", here), here + ".s");
    s.descriptor.alpha = integer(e, "alpha", here);
    s.descriptor.beta = integer_or(e, "beta", 1, here);
    s.descriptor.t_s = num(e, "t_s", here);
    s.descriptor.conjugates = flag_or(e, "conjugates", false, here);
    s.descriptor.approximate = flag_or(e, "approximate", false, here);
    s.q = integer(e, "q", here);
    if (s.descriptor.alpha != 1 && s.descriptor.alpha != -1) fail(here + ": alpha must be +1 or -1");
    if (s.descriptor.beta != 1 && s.descriptor.beta != -1) fail(here + ": beta must be +1 or -1");
    if (!(s.descriptor.t_s >= 0.0 && s.descriptor.t_s < 1.0))
      fail(here + ": t_s must lie in [0, 1)");
    if (s.q < 1) fail(here + ": q must be >= 1");
    if (s.descriptor.s.rows() != dim)
      fail(here + ": operator has dimension " + std::to_string(s.descriptor.s.rows()) +
           ", system has " + std::to_string(dim));
    out.push_back(std::move(s));
  }
  return out;
}

// Sweep values in these parameters are frequencies and convert MHz -> rad/s;
// ratios and phases pass through unchanged.
bool dimensionful_parameter(const std::string& p) {
  return p == "epsilon_m" || p == "omega" || p == "delta" || p == "omega_m" || p == "j";
}

json echo_vector(const Vector& v) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", re}, {"im", im}};
}

json echo_matrix(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json rre = json::array(), rim = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      rre.push_back(m(r, c).real());
      rim.push_back(m(r, c).imag());
    }
    re.push_back(rre);
    im.push_back(rim);
  }
  return json{{"re", re}, {"im", im}};
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config must be a JSON object");
  check_keys(j,
             {"system", "initial_state", "probes", "trace", "sweep", "floquet", "trotter",
              "ensemble", "symmetries", "output"},
             "config");

  RunConfig cfg;
  json echo;

  const json& sys = need(j, "system", "config");
  cfg.system = parse_system(sys);
  {
    json se = sys;
    const std::string kind = se.at("kind").get<std::string>();
    if (kind == "phase_mod_tls" || kind == "amp_mod_tls") {
      if (!se.contains("epsilon_m_mhz")) se["epsilon_m_mhz"] = 0.0;
      if (!se.contains("phi")) se["phi"] = 0.0;
      if (!se.contains("delta_mhz")) se["delta_mhz"] = 0.0;
    }
    echo["system"] = se;
  }
  const int dim = spec_dim(cfg.system);

  cfg.initial_state = parse_initial_state(need(j, "initial_state", "config"), dim);
  echo["initial_state"] = j.at("initial_state").is_string() ? j.at("initial_state")
                                                            : echo_vector(cfg.initial_state);

  cfg.probes = parse_probes(need(j, "probes", "config"), dim);
  {
    json parr = json::array();
    for (std::size_t i = 0; i < cfg.probes.size(); ++i) {
      const json& src = j.at("probes")[i];
      if (src.is_string()) parr.push_back(src);
      else {
        json o = echo_matrix(cfg.probes[i].matrix);
        o["label"] = cfg.probes[i].label;
        parr.push_back(o);
      }
    }
    echo["probes"] = parr;
  }

  if (j.contains("trace")) {
    const json& t = j.at("trace");
    check_keys(t, {"t_end_us", "samples"}, "trace");
    const double t_us = num(t, "t_end_us", "trace");
    cfg.samples = integer(t, "samples", "trace");
    if (!(t_us > 0.0)) fail("trace: t_end_us must be positive");
    if (cfg.samples < 2) fail("trace: samples must be >= 2");
    cfg.t_end = t_us * 1e-6;
    echo["trace"] = json{{"t_end_us", t_us}, {"samples", cfg.samples}};
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, {"parameter", "start", "stop", "count", "at"}, "sweep");
    cfg.has_sweep = true;
    cfg.sweep_parameter = text(s, "parameter", "sweep");
    const double start = num(s, "start", "sweep");
    const double stop = num(s, "stop", "sweep");
    const int count = integer(s, "count", "sweep");
    if (count < 1) fail("sweep: count must be >= 1");
    const double scale = dimensionful_parameter(cfg.sweep_parameter) ? mhz : 1.0;
    cfg.sweep_values.resize(count);
    cfg.sweep_values_raw.resize(count);
    for (int i = 0; i < count; ++i) {
      cfg.sweep_values_raw[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
      cfg.sweep_values[i] = scale * cfg.sweep_values_raw[i];
    }
    const double at_raw =
        s.contains("at") ? num(s, "at", "sweep")
                         : (count == 1 ? start : start + (stop - start) * (count / 2) / (count - 1));
    cfg.has_at = true;
    cfg.at_raw = at_raw;
    cfg.at_value = scale * at_raw;
    (void)apply_parameter(cfg.system, cfg.sweep_parameter, cfg.sweep_values.front());
    echo["sweep"] = json{{"parameter", cfg.sweep_parameter}, {"start", start}, {"stop", stop},
                         {"count", count},  {"at", at_raw}};
  }

  {
    const json f = j.contains("floquet") ? j.at("floquet") : json::object();
    check_keys(f, {"kblocks", "convergence_check"}, "floquet");
    cfg.kblocks = integer_or(f, "kblocks", 0, "floquet");
    if (cfg.kblocks < 0) fail("floquet: kblocks must be >= 0");
    cfg.convergence_check = flag_or(f, "convergence_check", true, "floquet");
    echo["floquet"] = json{{"kblocks", cfg.kblocks}, {"convergence_check", cfg.convergence_check}};
  }

  if (j.contains("trotter")) {
    const json& t = j.at("trotter");
    check_keys(t, {"dt_us"}, "trotter");
    const double dt_us = num(t, "dt_us", "trotter");
    if (dt_us < 0.0) fail("trotter: dt_us must be >= 0");
    cfg.trotter_dt = dt_us * 1e-6;
    echo["trotter"] = json{{"dt_us", dt_us}};
  }

  if (j.contains("ensemble")) {
    const json& e = j.at("ensemble");
    check_keys(e, {"sigma_mhz", "count", "span"}, "ensemble");
    const double sigma = num(e, "sigma_mhz", "ensemble");
    if (sigma < 0.0) fail("ensemble: sigma_mhz must be >= 0");
    cfg.ensemble.sigma = sigma * mhz;
    cfg.ensemble.count = integer_or(e, "count", 51, "ensemble");
    cfg.ensemble.span = num_or(e, "span", 2.0, "ensemble");
    if (cfg.ensemble.count < 1) fail("ensemble: count must be >= 1");
    if (!(cfg.ensemble.span > 0.0)) fail("ensemble: span must be positive");
    echo["ensemble"] =
        json{{"sigma_mhz", sigma}, {"count", cfg.ensemble.count}, {"span", cfg.ensemble.span}};
  }

  cfg.symmetries = parse_symmetries(j.contains("symmetries") ? j.at("symmetries") : json::array(),
                                    dim);
  {
    json sarr = json::array();
    const json& src = j.contains("symmetries") ? j.at("symmetries") : json::array();
    for (std::size_t i = 0; i < cfg.symmetries.size(); ++i) {
      if (src[i].is_string()) sarr.push_back(src[i]);
      else {
        const SymmetryConfig& s = cfg.symmetries[i];
        json o;
        o["name"] = s.descriptor.name;
        o["s"] = echo_matrix(s.descriptor.s);
        o["alpha"] = s.descriptor.alpha;
        o["beta"] = s.descriptor.beta;
        o["t_s"] = s.descriptor.t_s;
        o["conjugates"] = s.descriptor.conjugates;
        o["approximate"] = s.descriptor.approximate;
        o["q"] = s.q;
        sarr.push_back(o);
      }
    }
    echo["symmetries"] = sarr;
  }

  {
    const json o = j.contains("output") ? j.at("output") : json::object();
    check_keys(o, {"directory", "hann", "n_max"}, "output");
    cfg.hann = flag_or(o, "hann", false, "output");
    cfg.n_max = integer_or(o, "n_max", 4, "output");
    if (cfg.n_max < 1) fail("output: n_max must be >= 1");
    if (o.contains("directory")) cfg.out_dir = text(o, "directory", "output");
    echo["output"] = json{{"directory", cfg.out_dir}, {"hann", cfg.hann}, {"n_max", cfg.n_max}};
  }

  cfg.resolved = echo.dump(2) + "\n";
  return cfg;
}

namespace {

json resonance_preset(const char* probe, double phi) {
  json j;
  j["system"] = {{"kind", "phase_mod_tls"}, {"omega_mhz", 3.0},   {"epsilon_m_mhz", 0.0},
                 {"omega_m_mhz", 3.0},      {"phi", phi},         {"delta_mhz", 0.0}};
  j["initial_state"] = "|0>";
  j["probes"] = {probe};
  j["trace"] = {{"t_end_us", 4.0}, {"samples", 401}};
  j["sweep"] = {{"parameter", "two_eps_over_omega_m"}, {"start", 0.0}, {"stop", 5.0},
                {"count", 101},  {"at", 2.5}};
  j["symmetries"] = {"parity", "particle_hole_p1"};
  j["output"] = {{"hann", false}, {"n_max", 5}};
  return j;
}

json cdt_preset() {
  json j;
  j["system"] = {{"kind", "phase_mod_tls"}, {"omega_mhz", 1.5}, {"epsilon_m_mhz", 0.0},
                 {"omega_m_mhz", 15.0},     {"phi", 0.0},       {"delta_mhz", 0.0}};
  j["initial_state"] = "|0>";
  j["probes"] = {"sigma_x"};
  j["trace"] = {{"t_end_us", 2.0}, {"samples", 401}};
  // "at" sits on the located quasi-energy degeneracy for this coupling ratio.
  j["sweep"] = {{"parameter", "two_eps_over_omega_m"}, {"start", 0.0}, {"stop", 4.8096},
                {"count", 101},  {"at", 2.4019119}};
  j["symmetries"] = {"parity", "particle_hole_p1", "particle_hole_p2"};
  j["output"] = {{"hann", false}, {"n_max", 3}};
  return j;
}

json three_level_preset() {
  json j;
  j["system"] = {{"kind", "three_level_rotating"}, {"j_mhz", 0.0}, {"omega_m_mhz", 0.3}};
  const Vector psi0 =
      ((three_level_e(1) + three_level_e(2) + three_level_e(3)) / std::sqrt(3.0)).eval();
  json re = json::array();
  for (int i = 0; i < 3; ++i) re.push_back(psi0(i).real());
  j["initial_state"] = {{"re", re}};
  j["probes"] = {"three_level_V"};
  j["trace"] = {{"t_end_us", 40.0}, {"samples", 5001}};
  j["sweep"] = {{"parameter", "two_j_over_omega_m"}, {"start", 0.0}, {"stop", 6.0},
                {"count", 101},  {"at", 3.0}};
  j["symmetries"] = {"threefold_rotation"};
  j["output"] = {{"hann", false}, {"n_max", 3}};
  return j;
}

json build_preset(const std::string& name) {
  if (name == "fig1a") return resonance_preset("sigma_z", 0.0);
  if (name == "fig1b") return resonance_preset("sigma_x", 0.0);
  if (name == "fig1c") return resonance_preset("sigma_z", pi / 2);
  if (name == "fig1d") return resonance_preset("sigma_x", pi / 2);
  if (name == "fig2") {
    json j = resonance_preset("sigma_x", 0.0);
    json term = {{"harmonic", 2}, {"axis", "z"}, {"amplitude", 0.2}, {"relative", true}};
    j["system"]["breaking"] = json::array({term});
    return j;
  }
  if (name == "fig3" || name == "figS7a") return cdt_preset();
  if (name == "figS7b") {
    json j = cdt_preset();
    j["system"]["phi"] = pi / 2;
    j["initial_state"] = "|+i>";
    return j;
  }
  if (name == "fig4" || name == "figS11a") return three_level_preset();
  if (name == "figS11b") {
    json j = three_level_preset();
    j["floquet"] = {{"kblocks", 150}, {"convergence_check", false}};
    return j;
  }
  if (name == "figS11c") {
    json j = three_level_preset();
    j["system"] = {{"kind", "three_level_first_frame"}, {"delta_mhz", 15.0}, {"omega1_mhz", 30.0},
                   {"omega2_mhz", 30.0},                {"j_mhz", 0.0},      {"omega_m_mhz", 0.3}};
    j["symmetries"] = json::array();
    return j;
  }
  if (name == "figS9") {
    json j = resonance_preset("sigma_z", 0.0);
    j["ensemble"] = {{"sigma_mhz", 0.15}, {"count", 51}, {"span", 2.0}};
    return j;
  }
  fail("unknown preset \"" + name + "\"; available: fig1a fig1b fig1c fig1d fig2 fig3 fig4 "
       "figS7a figS7b figS9 figS11a figS11b figS11c");
}

}  // namespace

std::string preset_config(const std::string& name) { return build_preset(name).dump(2) + "\n"; }

std::vector<std::string> preset_names() {
  return {"fig1a",  "fig1b",  "fig1c", "fig1d",   "fig2",    "fig3",    "fig4",
          "figS7a", "figS7b", "figS9", "figS11a", "figS11b", "figS11c"};
}

}  // namespace floq
