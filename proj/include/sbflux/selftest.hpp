#pragma once

#include <iosfwd>

namespace sbflux {

/// Analytic identity suite over the closed-form state algebra: photon
/// recovery for coherent and squeezed-vacuum states, the single-sideband /
/// two-sideband consistency identity, and the gain-to-squeeze-factor
/// anchors. Deterministic and sub-second. Prints one line per check;
/// returns false when any fails.
bool run_selftest(std::ostream& out);

}  // namespace sbflux
