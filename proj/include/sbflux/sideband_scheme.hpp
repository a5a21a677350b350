#pragma once

#include <utility>
#include <vector>

#include "sbflux/quantum_states.hpp"

namespace sbflux {

enum class ShiftDirection { signal_upshifted, lo_upshifted };

// AOM frequency-translation stage: places the field of interest at one
// sideband of the analysis frequency with vacuum in the mirror mode.
struct SchemeConfig {
  double omega_aom = 80.0e6;         // Hz, AOM drive
  double detection_center = 160.0e6; // Hz, analysis frequency (second order)
  ShiftDirection direction = ShiftDirection::signal_upshifted;
  double aom_transmission = 1.0;     // power transmission of the AOM path
  void validate() const;
};

/// Translate a single-mode input onto one sideband. The amplitude scales as
/// sqrt(aom_transmission) and the mirror sideband becomes uncorrelated
/// vacuum, so every cross-sideband term of the variance spectrum vanishes
/// and the LO phase dependence disappears.
///
/// Either shift direction yields the same observables, so the output is
/// stored in the canonical +omega-occupied form for both.
/// Rejects inputs occupying both sidebands.
SidebandField apply_scheme(const SidebandField& input, const SchemeConfig& cfg);

/// Photons per mode in the occupied sideband of a scheme output: V - 1,
/// unclamped.
double single_sideband_photon_number(double variance);

/// Analytic variance spectrum at n_points angles equally spaced over
/// [0, 2pi). Flat for scheme outputs; phase-dependent when both sidebands
/// are correlated. Rejects n_points < 2.
std::vector<std::pair<double, double>> phase_sweep(const SidebandField& field, int n_points);

}  // namespace sbflux
