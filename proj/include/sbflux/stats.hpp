#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbflux/harness.hpp"

namespace sbflux {

struct Histogram {
  std::vector<double> bin_lo;
  std::vector<double> bin_hi;
  std::vector<std::int64_t> count;
};

/// Equal-width histogram over [min, max] of the data; the last bin is
/// closed. Integer-valued data keeps integer bin edges.
Histogram make_histogram(const std::vector<double>& values, int n_bins);

/// Render as "bin_lo bin_hi count" lines.
std::string histogram_text(const Histogram& h);

// Time series and distributions of both detectors at one operating point:
// per-second SPDM counts (bright and dark) with their histograms, and
// dB-domain homodyne bin-power histograms for the signal, the bare QNL and
// the electronics-only record.
struct StatsReport {
  CountRecord spdm_bright;
  CountRecord spdm_dark;
  Histogram spdm_bright_hist;
  Histogram spdm_dark_hist;
  Histogram homodyne_signal_db;
  Histogram homodyne_qnl_db;
  Histogram homodyne_dark_db;
  double spdm_bright_dispersion = 0.0;  // variance / mean of per-second counts
  double spdm_dark_dispersion = 0.0;
  double homodyne_signal_variance = 0.0;  // QNL-relative record means
  double homodyne_qnl_variance = 0.0;
  double homodyne_dark_variance = 0.0;
};

StatsReport stats_report(double flux_a, const HarnessConfig& cfg, std::uint64_t seed);

/// Summary block for the JSON side channel.
nlohmann::json stats_summary(const StatsReport& report);

/// Dispersion (variance / mean) of an integer count series.
double count_dispersion(const std::vector<std::int64_t>& counts);

}  // namespace sbflux
