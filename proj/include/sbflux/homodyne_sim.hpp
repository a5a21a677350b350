#pragma once

#include <cstdint>
#include <vector>

#include "sbflux/quantum_states.hpp"

namespace sbflux {

// Homodyne detector + spectrum analyser front end. A record is one set of
// independent RBW-bin power samples taken over record_seconds.
struct HomodyneConfig {
  double eta_det = 0.9;        // PIN photodiode quantum efficiency
  double visibility = 0.93;    // interferometric fringe visibility
  double lo_phase = 0.0;       // LO quadrature angle, radians
  double rbw_nominal = 30.0;   // Hz
  double rbw_measured = 33.18; // Hz, used for all scaling
  double record_seconds = 30.0;
  double dark_variance = 0.1;  // electronic noise power, QNL-relative
  std::uint64_t seed = 0;

  /// Independent bins in one record: floor(record_seconds * rbw_measured).
  std::int64_t sample_count() const;
  void validate() const;  // requires sample_count() >= 2
};

// Measured variance in QNL-relative units with its statistical uncertainty.
struct VarianceEstimate {
  double value = 0.0;
  std::int64_t n_samples = 0;
  double sigma = 0.0;
  bool dark_subtracted = false;
};

/// Overall detection efficiency, visibility^2 * eta_det.
double effective_efficiency(const HomodyneConfig& cfg);

// One RBW bin is a single complex circular-Gaussian draw z with per-real-part
// variance eta*(V_true - 1) + 1 + dark_variance, and the bin power is
// |z|^2 / 2; noise-only bins are exponential, which reproduces the dB-domain
// distribution the analyser displays. The unit vacuum term survives any
// efficiency because vacuum enters through every loss port.
//
// The parallel kernel and the serial reference draw each bin from the same
// counter, so their outputs are bit-identical.
std::vector<double> synthesize_variance_record(const SidebandField& field,
                                               const HomodyneConfig& cfg);
std::vector<double> synthesize_variance_record_serial(const SidebandField& field,
                                                      const HomodyneConfig& cfg);

/// Sample mean and scaled standard error of a record. Rejects records with
/// fewer than two samples.
VarianceEstimate measure_variance(const std::vector<double>& samples);

/// Electronics-only record: bin power drawn with per-real-part variance
/// dark_variance and no optical term (no LO-referenced vacuum either).
std::vector<double> dark_record_samples(const HomodyneConfig& cfg);
VarianceEstimate dark_record(const HomodyneConfig& cfg);

/// measured - dark with uncertainties added in quadrature. Negative results
/// are permitted and flagged downstream. Rejects inputs already subtracted.
VarianceEstimate subtract_dark(const VarianceEstimate& measured, const VarianceEstimate& dark);

}  // namespace sbflux
