#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "floquet/commands.hpp"
#include "floquet/config.hpp"
#include "floquet/errors.hpp"
#include "floquet/floquet.hpp"
#include "json.hpp"

using namespace floq;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "floq_cli_test" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "floquet-bands");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

json base_config() {
  json j;
  j["system"] = {{"kind", "phase_mod_tls"}, {"omega_mhz", 3.0}, {"epsilon_m_mhz", 3.75},
                 {"omega_m_mhz", 3.0}};
  j["initial_state"] = "|0>";
  j["probes"] = {"sigma_z"};
  return j;
}

std::vector<std::string> ndjson_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("frequencies and times convert exactly once") {
  json j = base_config();
  j["system"]["phi"] = 0.7;
  j["trace"] = {{"t_end_us", 4.0}, {"samples", 401}};
  const RunConfig cfg = parse_config(j.dump());

  const auto& p = std::get<PhaseModTLS>(cfg.system);
  CHECK(p.omega == 3.0 * mhz);
  CHECK(p.epsilon_m == 3.75 * mhz);
  CHECK(p.omega_m == 3.0 * mhz);
  CHECK(p.phi == 0.7);  // radians pass through
  CHECK(p.delta == 0.0);
  CHECK(cfg.t_end == 4.0e-6);
  CHECK(cfg.samples == 401);

  // Defaults without the optional blocks.
  CHECK(cfg.kblocks == 0);
  CHECK(cfg.convergence_check);
  CHECK(cfg.trotter_dt == 0.0);
  CHECK(cfg.ensemble.sigma == 0.0);
  CHECK(cfg.n_max == 4);
  CHECK_FALSE(cfg.hann);
  CHECK(cfg.out_dir == "out");
  CHECK_FALSE(cfg.has_sweep);
}

TEST_CASE("sweep scaling depends on the parameter kind") {
  json j = base_config();

  SUBCASE("dimensionful parameters scale MHz to rad/s") {
    j["sweep"] = {{"parameter", "epsilon_m"}, {"start", 0.0}, {"stop", 2.0}, {"count", 5}};
    const RunConfig cfg = parse_config(j.dump());
    REQUIRE(cfg.has_sweep);
    REQUIRE(cfg.sweep_values.size() == 5);
    for (int i = 0; i < 5; ++i) {
      CHECK(cfg.sweep_values_raw[i] == doctest::Approx(0.5 * i).epsilon(1e-15));
      CHECK(cfg.sweep_values[i] == doctest::Approx(0.5 * i * mhz).epsilon(1e-15));
    }
    // Default "at" is the middle sweep value.
    CHECK(cfg.at_raw == doctest::Approx(1.0));
    CHECK(cfg.at_value == doctest::Approx(1.0 * mhz));
  }

  SUBCASE("ratio parameters pass through unchanged") {
    j["sweep"] = {{"parameter", "two_eps_over_omega_m"}, {"start", 0.0}, {"stop", 5.0},
                  {"count", 11},  {"at", 2.5}};
    const RunConfig cfg = parse_config(j.dump());
    CHECK(cfg.sweep_values[10] == 5.0);
    CHECK(cfg.sweep_values_raw[10] == 5.0);
    CHECK(cfg.at_value == 2.5);
  }

  SUBCASE("parameters are validated against the drive kind") {
    j["sweep"] = {{"parameter", "two_j_over_omega_m"}, {"start", 0.0}, {"stop", 1.0},
                  {"count", 3}};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
}

TEST_CASE("strict parsing rejects malformed configs") {
  CHECK_THROWS_AS((void)parse_config("not json"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("[1,2]"), ConfigError);

  json j = base_config();
  SUBCASE("unknown top-level key") {
    j["bogus"] = 1;
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("unknown system kind") {
    j["system"]["kind"] = "qubit";
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("missing probes") {
    j.erase("probes");
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("too few samples") {
    j["trace"] = {{"t_end_us", 1.0}, {"samples", 1}};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("n_max must be positive") {
    j["output"] = {{"n_max", 0}};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
}

TEST_CASE("initial states resolve by name or explicit vector") {
  json j = base_config();

  SUBCASE("explicit vectors are normalized") {
    j["initial_state"] = {{"re", {3.0, 4.0}}};
    const RunConfig cfg = parse_config(j.dump());
    CHECK(cfg.initial_state.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cfg.initial_state(0).real() == doctest::Approx(0.6).epsilon(1e-14));
  }
  SUBCASE("zero vector is rejected") {
    j["initial_state"] = {{"re", {0.0, 0.0}}};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("dimension mismatch is rejected") {
    j["initial_state"] = {{"re", {1.0, 0.0, 0.0}}};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("named three-level state on a TLS is rejected") {
    j["initial_state"] = "e1";
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
}

TEST_CASE("probes resolve, deduplicate and stay Hermitian") {
  json j = base_config();

  SUBCASE("labels are sanitized") {
    j["probes"] = {json{{"label", "My Probe"}, {"re", {{0.0, 1.0}, {1.0, 0.0}}}}};
    const RunConfig cfg = parse_config(j.dump());
    CHECK(cfg.probes[0].label == "my_probe");
  }
  SUBCASE("non-Hermitian matrices are rejected") {
    j["probes"] = {json{{"re", {{0.0, 1.0}, {0.0, 0.0}}}}};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("duplicate labels are rejected") {
    j["probes"] = {"sigma_z", "sigma_z"};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("dimension mismatch is rejected") {
    j["probes"] = {"three_level_V"};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
}

TEST_CASE("symmetry descriptors validate their group data") {
  json j = base_config();

  SUBCASE("named symmetries carry the full descriptor") {
    j["symmetries"] = {"parity"};
    const RunConfig cfg = parse_config(j.dump());
    REQUIRE(cfg.symmetries.size() == 1);
    CHECK(cfg.symmetries[0].q == 2);
    CHECK(cfg.symmetries[0].descriptor.alpha == 1);
    CHECK(cfg.symmetries[0].descriptor.t_s == 0.5);
    CHECK((cfg.symmetries[0].descriptor.s - pauli_x()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("named symmetry with the wrong dimension is rejected") {
    j["symmetries"] = {"threefold_rotation"};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }

  json s = {{"name", "custom"},
            {"s", json{{"re", {{0.0, 1.0}, {1.0, 0.0}}}}},
            {"alpha", 1},
            {"t_s", 0.5},
            {"q", 2}};
  SUBCASE("alpha outside {-1,+1} is rejected") {
    s["alpha"] = 2;
    j["symmetries"] = {s};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("beta outside {-1,+1} is rejected") {
    s["beta"] = 0;
    j["symmetries"] = {s};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("t_s outside [0,1) is rejected") {
    s["t_s"] = 1.0;
    j["symmetries"] = {s};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
  SUBCASE("q below 1 is rejected") {
    s["q"] = 0;
    j["symmetries"] = {s};
    CHECK_THROWS_AS((void)parse_config(j.dump()), ConfigError);
  }
}

TEST_CASE("every shipped preset parses") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const RunConfig cfg = parse_config(preset_config(name));
    CHECK(!cfg.probes.empty());
    CHECK(json::parse(cfg.resolved).is_object());
  }
  const RunConfig broken = parse_config(preset_config("fig2"));
  CHECK(std::get<PhaseModTLS>(broken.system).breaking.size() == 1);
  const RunConfig pinned = parse_config(preset_config("figS11b"));
  CHECK(pinned.kblocks == 150);
  CHECK_FALSE(pinned.convergence_check);
  const RunConfig ens = parse_config(preset_config("figS9"));
  CHECK(ens.ensemble.sigma == doctest::Approx(0.15 * mhz));
  CHECK_THROWS_AS((void)preset_config("fig99"), ConfigError);
}

TEST_CASE("error labels name the concrete failure") {
  CHECK(error_label(InvalidParameter("x")) == "InvalidParameter");
  CHECK(error_label(TruncationTooSmall("x")) == "TruncationTooSmall");
  CHECK(error_label(DegenerateSelection("x")) == "DegenerateSelection");
  CHECK(error_label(SingularBasis("x")) == "SingularBasis");
  CHECK(error_label(StepTooLarge("x")) == "StepTooLarge");
  CHECK(error_label(NonuniformGrid("x")) == "NonuniformGrid");
  CHECK(error_label(NoMatchingMode("x")) == "NoMatchingMode");
  CHECK(error_label(AmbiguousAtDegeneracy("x")) == "AmbiguousAtDegeneracy");
  CHECK(error_label(NoMinimumInBracket("x")) == "NoMinimumInBracket");
  CHECK(error_label(NotDegenerate("x")) == "NotDegenerate");
  CHECK(error_label(FloquetError("x")) == "FloquetError");
}

TEST_CASE("resolve_kblocks honors explicit truncation and converges otherwise") {
  json j = base_config();
  j["floquet"] = {{"kblocks", 37}, {"convergence_check", false}};
  CHECK(resolve_kblocks(parse_config(j.dump())) == 37);

  const RunConfig cfg = parse_config(base_config().dump());
  const int k = resolve_kblocks(cfg);
  CHECK(k >= 16);
  CHECK_NOTHROW((void)solve_modes(build_hamiltonian(cfg.system), k));
}

TEST_CASE("modes artifacts for a static drive are exact") {
  const fs::path dir = fresh_dir("static_modes");
  json j = base_config();
  j["system"]["omega_mhz"] = 1.0;
  j["system"]["epsilon_m_mhz"] = 0.0;
  j["output"] = {{"directory", dir.string()}};
  run_modes(parse_config(j.dump()));

  CHECK(read_file(dir / "modes.csv") == "sweep_value,lambda_1,lambda_2\n0,-0.5,0.5\n");
  CHECK(json::parse(read_file(dir / "config.resolved")).is_object());

  // (Ω/2)σ_x modes are the σ_x eigenstates, on the Bloch equator at ±x.
  const auto lines = ndjson_lines(read_file(dir / "bloch.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "sweep_value,mode,bloch_x,bloch_y,bloch_z");
  for (int mu = 0; mu < 2; ++mu) {
    std::istringstream row(lines[mu + 1]);
    std::string sweep, mode, bx, by, bz;
    std::getline(row, sweep, ',');
    std::getline(row, mode, ',');
    std::getline(row, bx, ',');
    std::getline(row, by, ',');
    std::getline(row, bz, ',');
    CHECK(mode == (mu == 0 ? "minus" : "plus"));
    CHECK(std::stod(bx) == doctest::Approx(mu == 0 ? -1.0 : 1.0).epsilon(1e-12));
    CHECK(std::abs(std::stod(by)) < 1e-12);
    CHECK(std::abs(std::stod(bz)) < 1e-12);
  }
}

TEST_CASE("three-level runs skip the Bloch artifact") {
  const fs::path dir = fresh_dir("three_level_modes");
  json j;
  j["system"] = {{"kind", "three_level_rotating"}, {"j_mhz", 0.12}, {"omega_m_mhz", 0.3}};
  j["initial_state"] = "e1";
  j["probes"] = {"three_level_V"};
  j["output"] = {{"directory", dir.string()}};
  run_modes(parse_config(j.dump()));
  CHECK(fs::exists(dir / "modes.csv"));
  CHECK_FALSE(fs::exists(dir / "bloch.csv"));
  const auto lines = ndjson_lines(read_file(dir / "modes.csv"));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "sweep_value,lambda_1,lambda_2,lambda_3");
}

TEST_CASE("sweep artifacts are deterministic across runs and thread counts") {
  json j = base_config();
  j["trace"] = {{"t_end_us", 2.0}, {"samples", 101}};
  j["sweep"] = {{"parameter", "two_eps_over_omega_m"}, {"start", 0.0}, {"stop", 3.0},
                {"count", 8}};

  auto spectrum_bytes = [&](const std::string& leaf, int threads) {
    const fs::path dir = fresh_dir(leaf);
    json run = j;
    run["output"] = {{"directory", dir.string()}};
    RunConfig cfg = parse_config(run.dump());
    cfg.threads = threads;
    run_spectrum(cfg);
    run_modes(cfg);
    return read_file(dir / "spectrum.csv") + read_file(dir / "modes.csv");
  };

  const std::string first = spectrum_bytes("det_a", 1);
  CHECK(first == spectrum_bytes("det_b", 1));
  CHECK(first == spectrum_bytes("det_c", 4));

  const auto header = ndjson_lines(first);
  CHECK(header.front() == "sweep_value,frequency_mhz,magnitude");
}

TEST_CASE("predict emits rules and attaches observations once spectra exist") {
  const fs::path dir = fresh_dir("predict");
  json j = base_config();
  j["probes"] = {"sigma_z", "sigma_x"};
  j["trace"] = {{"t_end_us", 4.0}, {"samples", 401}};
  j["symmetries"] = {"parity", "particle_hole_p1"};
  j["output"] = {{"directory", dir.string()}, {"n_max", 5}};
  const RunConfig cfg = parse_config(j.dump());

  run_predict(cfg);
  auto lines = ndjson_lines(read_file(dir / "rules_sigma_z.ndjson"));
  REQUIRE(!lines.empty());
  for (const auto& line : lines) {
    const json r = json::parse(line);
    for (const char* key : {"class", "mu", "nu", "n", "frequency_mhz", "verdict", "mechanism",
                            "factor_re", "factor_im"})
      CHECK(r.contains(key));
    CHECK_FALSE(r.contains("observed_magnitude"));
  }

  // With the spectrum artifact in place the same command cross-checks it.
  run_spectrum(cfg);
  run_predict(cfg);
  int dark = 0, visible = 0;
  for (const auto& probe : {"rules_sigma_z.ndjson", "rules_sigma_x.ndjson"}) {
    for (const auto& line : ndjson_lines(read_file(dir / probe))) {
      const json r = json::parse(line);
      REQUIRE(r.contains("observed_magnitude"));
      REQUIRE(r.contains("consistent"));
      const std::string verdict = r.at("verdict").get<std::string>();
      if (verdict == "spDS" || verdict == "spDB") {
        ++dark;
        CHECK(r.at("consistent").get<bool>());
      }
      if (verdict == "visible") ++visible;
    }
  }
  CHECK(dark > 0);
  CHECK(visible > 0);
}

TEST_CASE("oracle check passes with the automatic step and flags a forced one") {
  json j = base_config();
  j["trace"] = {{"t_end_us", 4.0}, {"samples", 101}};

  const fs::path ok = fresh_dir("oracle_ok");
  j["output"] = {{"directory", ok.string()}};
  CHECK(run_oracle_check(parse_config(j.dump())));
  const json report = json::parse(ndjson_lines(read_file(ok / "oracle.ndjson")).front());
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("max_infidelity").get<double>() < report.at("threshold").get<double>());
  CHECK(report.at("samples").get<int>() == 101);

  // A deliberately coarse (but legal) step accumulates visible Trotter error.
  const fs::path coarse = fresh_dir("oracle_coarse");
  j["trotter"] = {{"dt_us", 0.005}};
  j["output"] = {{"directory", coarse.string()}};
  CHECK_FALSE(run_oracle_check(parse_config(j.dump())));

  // A step past the first-order bound is refused outright.
  j["trotter"] = {{"dt_us", 0.1}};
  CHECK_THROWS_AS((void)run_oracle_check(parse_config(j.dump())), StepTooLarge);
}

TEST_CASE("cli entry point maps outcomes to exit codes") {
  const fs::path dir = fresh_dir("cli_exit");

  CHECK(run_cli({"--list-presets"}) == 0);
  CHECK(run_cli({}) == 2);                                         // no command
  CHECK(run_cli({"modes"}) == 2);                                  // no config source
  CHECK(run_cli({"modes", "--preset", "fig99"}) == 2);             // unknown preset
  CHECK(run_cli({"modes", "--config", "/nonexistent.json"}) == 2); // unreadable file
  CHECK(run_cli({"modes", "--frobnicate"}) == 2);                  // unknown option

  json j = base_config();
  const fs::path cfg_path = dir / "run.json";
  {
    std::ofstream os(cfg_path);
    os << j.dump();
  }
  CHECK(run_cli({"modes", "--config", cfg_path.string(), "--out", (dir / "m").string()}) == 0);
  CHECK(fs::exists(dir / "m" / "modes.csv"));

  // Truncation pinned below the drive's Fourier content is a solver error.
  j["floquet"] = {{"kblocks", 2}, {"convergence_check", false}};
  j["system"]["epsilon_m_mhz"] = 9.0;
  const fs::path tight_path = dir / "tight.json";
  {
    std::ofstream os(tight_path);
    os << j.dump();
  }
  CHECK(run_cli({"modes", "--config", tight_path.string(), "--out", (dir / "t").string()}) == 3);

  // Oracle violations get their own exit code.
  json v = base_config();
  v["trace"] = {{"t_end_us", 4.0}, {"samples", 101}};
  v["trotter"] = {{"dt_us", 0.005}};
  const fs::path viol_path = dir / "viol.json";
  {
    std::ofstream os(viol_path);
    os << v.dump();
  }
  CHECK(run_cli({"oracle-check", "--config", viol_path.string(), "--out",
                 (dir / "v").string()}) == 1);
}
