#pragma once

#include <iosfwd>

#include "tumordg/config.hpp"
#include "tumordg/diagnostics.hpp"

namespace tumordg {

/// Runs the configured simulation, writing diagnostics.csv (one row per
/// accepted step) and VTK snapshots at the output cadence into
/// cfg.output_dir. On Newton divergence the time step is halved down to
/// dt/256, then SolverAbort is thrown. ConfigError propagates.
void run(const RunConfig& cfg);

/// Diagnostics CSV column layout (fixed order, header included).
void write_diagnostics_header(std::ostream& out);
void write_diagnostics_row(std::ostream& out, long step, double time,
                           const StepDiagnostics& diag);

}  // namespace tumordg
