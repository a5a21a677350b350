#pragma once

#include <cstdint>
#include <vector>

#include "sbflux/estimation.hpp"

namespace sbflux {

// Gated InGaAs APD single-photon detection module. At most one click per
// gate; a gate opens every gate_interval for gate_width seconds.
struct SpdmConfig {
  double eta_s = 0.11;               // APD quantum efficiency
  double gate_width = 100e-9;        // s
  double gate_interval = 10e-6;      // s
  double integration_seconds = 300.0;
  double dark_rate = 4.0e4;          // counts/s of gated-open time
  double background_flux = 0.0;      // photons/s of stray light at the APD
  double afterpulse_prob = 0.0;      // click -> click in the next gate
  std::uint64_t seed = 0;

  std::int64_t gate_count() const;   // floor(integration_seconds / gate_interval)
  void validate() const;
};

struct CountRecord {
  std::int64_t clicks = 0;
  std::int64_t gates = 0;
  std::vector<std::int64_t> binned_clicks;  // per-second display bins
};

enum class SpdmEstimator { linear, log_corrected };

/// Per-gate click probability 1 - exp(-mu) with
/// mu = (eta_s * (flux + background_flux) + dark_rate) * gate_width;
/// the exponential captures >= 2 photon pile-up within a gate.
double click_probability(double flux_at_apd, const SpdmConfig& cfg);

// Per-gate Bernoulli draws addressed by gate index, so results are
// bit-identical for any chunking. With afterpulsing enabled the click chain
// is a sequential recurrence and the simulation runs single-threaded; the
// draws themselves stay counter-based either way.
CountRecord simulate_counts(double flux_at_apd, const SpdmConfig& cfg);
CountRecord simulate_counts_serial(double flux_at_apd, const SpdmConfig& cfg);

/// Flux at the APD input from a bright/dark record pair.
/// linear:        (bright - dark) / (gates * gate_width * eta_s)
/// log_corrected: (-ln(1-p_bright) + ln(1-p_dark)) / (gate_width * eta_s),
/// which inverts the gate saturation nonlinearity. Rejects saturated
/// records (p = 1) in log_corrected mode; a negative mean is flagged, not
/// an error.
FluxEstimate estimate_flux_from_counts(const CountRecord& bright, const CountRecord& dark,
                                       const SpdmConfig& cfg, SpdmEstimator mode,
                                       const std::string& point = "B2");

}  // namespace sbflux
