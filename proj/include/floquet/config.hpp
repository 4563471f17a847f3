#ifndef FLOQUET_CONFIG_HPP
#define FLOQUET_CONFIG_HPP

#include <string>
#include <vector>

#include "floquet/hamiltonians.hpp"
#include "floquet/symmetry.hpp"
#include "floquet/types.hpp"

namespace floq {

struct ProbeConfig {
  std::string label;
  Matrix matrix;
};

struct SymmetryConfig {
  SymmetryDescriptor descriptor;
  int q = 2;
};

// Fully resolved run description. Configs speak MHz, radians, and microseconds;
// parsing converts to rad/s and seconds exactly once. `resolved` holds the
// canonical JSON echo written to config.resolved alongside every artifact.
struct RunConfig {
  DriveSpec system;
  Vector initial_state;
  std::vector<ProbeConfig> probes;
  double t_end = 0.0;  // seconds
  int samples = 0;
  bool has_sweep = false;
  std::string sweep_parameter;
  std::vector<double> sweep_values;      // internal units
  std::vector<double> sweep_values_raw;  // config units, echoed in CSV columns
  bool has_at = false;
  double at_value = 0.0;  // internal units; default is the middle sweep value
  double at_raw = 0.0;
  int kblocks = 0;        // 0 = escalate until mode tails converge
  bool convergence_check = true;
  double trotter_dt = 0.0;  // seconds, 0 = automatic
  EnsembleSpec ensemble;    // active when sigma > 0 and count > 1
  std::vector<SymmetryConfig> symmetries;
  bool hann = false;
  int n_max = 4;
  int threads = 0;
  std::string out_dir = "out";
  std::string resolved;
};

// Parse a JSON config. ConfigError on malformed JSON, unknown names, unit or
// dimension mismatches; all frequencies enter in MHz, times in microseconds.
RunConfig parse_config(const std::string& json_text);

// Shipped figure presets (fig1a..fig1d, fig2, fig3, fig4, figS7a, figS7b,
// figS9, figS11a..figS11c) as config JSON. ConfigError for unknown names.
std::string preset_config(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace floq

#endif
