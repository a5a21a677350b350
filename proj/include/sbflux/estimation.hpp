#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbflux/homodyne_sim.hpp"

namespace sbflux {

struct PathElement {
  std::string label;
  double transmission;  // power transmission, (0, 1]
};

// Ordered losses from the calibration reference point to a detector.
struct OpticalPath {
  std::vector<PathElement> elements;
  double total() const;
  void validate() const;
};

enum class FluxMethod { quantum, semiclassical, spdm_linear, spdm_log };

const char* to_string(FluxMethod method);

// Inferred mean photon flux at a named point. Negative means are reported
// as zero with the flag set, never silently clamped, so downstream
// statistics can count the deletions.
struct FluxEstimate {
  double phi = 0.0;    // photons/s
  double sigma = 0.0;  // one standard deviation, photons/s
  FluxMethod method = FluxMethod::quantum;
  std::string point = "B1";
  bool negative_mean_deleted = false;
};

/// Assemble an estimate, applying the negative-mean truncation policy.
FluxEstimate make_flux_estimate(double phi, double sigma, FluxMethod method,
                                const std::string& point);

/// Vacuum-subtracting estimator: phi = (v - 1) * RBW_measured / eta.
/// Requires a dark-subtracted variance.
FluxEstimate homodyne_flux_quantum(const VarianceEstimate& v, const HomodyneConfig& cfg,
                                   const std::string& point = "B1");

/// Stochastic-electrodynamics variant with no vacuum subtraction:
/// phi = v * RBW_measured / eta. Reports a spurious RBW/eta flux on vacuum.
FluxEstimate homodyne_flux_semiclassical(const VarianceEstimate& v, const HomodyneConfig& cfg,
                                         const std::string& point = "B1");

/// Scale a detector-plane estimate back to the reference point by the
/// path's total transmission. Rejects a zero-transmission path.
FluxEstimate refer_to_reference(const FluxEstimate& at_detector, const OpticalPath& path);

/// sigma(N) = sigma(1) / sqrt(N).
double statistical_sigma(std::int64_t n_samples, double base_sigma_1);

}  // namespace sbflux
