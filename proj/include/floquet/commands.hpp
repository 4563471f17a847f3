#ifndef FLOQUET_COMMANDS_HPP
#define FLOQUET_COMMANDS_HPP

#include <string>

#include "floquet/config.hpp"
#include "floquet/errors.hpp"

namespace floq {

// Concrete class name of a solver error, so CLI messages identify the failure
// ("TruncationTooSmall", "StepTooLarge", ...).
std::string error_label(const FloquetError& e);

// Truncation actually used by a run: explicit kblocks are taken as-is when the
// convergence check is off, otherwise the extreme sweep points (or the single
// point) are probed and the truncation escalated until mode tails converge.
int resolve_kblocks(const RunConfig& cfg);

// Each command writes its artifacts plus config.resolved into cfg.out_dir and
// throws ConfigError / FloquetError on failure.
void run_modes(const RunConfig& cfg);
void run_spectrum(const RunConfig& cfg);
void run_predict(const RunConfig& cfg);
bool run_oracle_check(const RunConfig& cfg);  // false when the oracle tolerance is violated

// Full argv entry point: parses arguments, dispatches, maps errors to exit
// codes (0 ok, 1 oracle violation, 2 config error, 3 solver error).
int cli_main(int argc, char** argv);

}  // namespace floq

#endif
