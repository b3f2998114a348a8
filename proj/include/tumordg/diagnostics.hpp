#pragma once

namespace tumordg {

/// Per-step monitors: masses, extrema, energy and Newton statistics.
struct StepDiagnostics {
  double mass_u = 0.0;
  double mass_n = 0.0;
  double mass_total = 0.0;
  double min_u = 0.0, max_u = 0.0;
  double min_n = 0.0, max_n = 0.0;
  double min_ureg = 0.0, max_ureg = 0.0;
  double energy = 0.0;
  double energy_decrement = 0.0;  // E_new - E_old
  int newton_iters = 0;
  double final_residual = 0.0;
  /// Left side of the discrete energy law scaled by dt (energy difference
  /// plus all dissipation terms); nonpositive up to solver tolerance for
  /// the structure-preserving scheme.
  double energy_law_lhs = 0.0;
};

}  // namespace tumordg
