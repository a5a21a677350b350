#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbflux/estimation.hpp"
#include "sbflux/sideband_scheme.hpp"
#include "sbflux/spdm_sim.hpp"

namespace sbflux {

// Full bench configuration: scheme, both detectors, and the calibrated
// paths from reference point A to the detector inputs B1 (homodyne) and
// B2 (SPDM). Defaults carry the bench operating point: 1540 nm, 80 MHz AOM
// analysed at 160 MHz, RBW 33.18 Hz over 30 s, VIS 0.93, eta_S 0.11 with
// 100 ns gates at 10 us intervals for 300 s.
struct HarnessConfig {
  double wavelength = 1540e-9;  // m
  SchemeConfig scheme;
  HomodyneConfig homodyne;
  SpdmConfig spdm;
  double coupler_b1 = 0.5;  // fiber split to the homodyne detector
  double coupler_b2 = 0.5;  // fiber split to the SPDM

  OpticalPath path_to_homodyne() const;  // AOM + B1 arm
  OpticalPath path_to_spdm() const;      // AOM + B2 arm
  void validate() const;

  static HarnessConfig defaults();
};

/// Parse a JSON config file section-by-section over the defaults.
/// Unknown keys are rejected. Throws std::invalid_argument with a message
/// suitable for the machine-readable error channel.
HarnessConfig load_config(const nlohmann::json& j);
HarnessConfig load_config_file(const std::string& path);

struct SweepSpec {
  std::vector<double> flux_points;  // photons/s at point A, ascending
  int repetitions = 5;
  HarnessConfig config = HarnessConfig::defaults();
  std::uint64_t seed = 0;

  static std::vector<double> default_flux_grid();  // 29 log-spaced, 1e2..1e9
  void validate() const;
};

struct SweepRow {
  double flux_a = 0.0;
  int repetition = 0;
  FluxEstimate quantum;
  FluxEstimate semiclassical;
  FluxEstimate spdm_linear;
  FluxEstimate spdm_log;
  std::string error;  // nonempty when a module rejected this row
};

/// One row per (flux point, repetition): coherent field at A, scheme, both
/// detector simulations, all four estimators, referred back to A.
/// Deterministic for a given spec regardless of thread count. Per-row
/// failures are recorded in the row, not thrown.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr int kSweepCsvVersion = 1;
inline constexpr const char* kSweepCsvHeader = "flux_a,method,phi_est,sigma,flagged";

/// Byte-stable CSV: header row then four method lines per sweep row, LF
/// line endings, '.' decimal, shortest round-trip number formatting.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Parse rows back from the CSV emitted by sweep_csv. Rows regain only the
/// fields the CSV carries.
struct CsvEntry {
  double flux_a;
  std::string method;
  double phi;
  double sigma;
  bool flagged;
};
std::vector<CsvEntry> parse_sweep_csv(std::istream& in);

// Per-decade accuracy summary of a sweep against the known incident flux.
// A decade counts as usable for a method when the mean relative bias and
// the mean absolute relative error are both below 10%.
nlohmann::json model_report(const std::vector<CsvEntry>& entries);
nlohmann::json model_report(const std::vector<SweepRow>& rows);

/// Number formatting used for the CSV (shortest round-trip, locale-free).
std::string format_double(double value);

}  // namespace sbflux
