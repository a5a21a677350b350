#include "sbflux/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sbflux/homodyne_sim.hpp"
#include "sbflux/philox.hpp"

namespace sbflux {

Histogram make_histogram(const std::vector<double>& values, int n_bins) {
  if (values.empty()) throw std::invalid_argument("make_histogram: no data");
  if (n_bins < 1) throw std::invalid_argument("make_histogram: n_bins must be >= 1");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;

  bool integral = true;
  for (double v : values)
    if (v != std::floor(v)) {
      integral = false;
      break;
    }
  double width;
  if (integral) {
    width = std::max(1.0, std::ceil((hi - lo + 1.0) / n_bins));
    n_bins = static_cast<int>(std::ceil((hi - lo + 1.0) / width));
    hi = lo + width * n_bins;
  } else {
    if (hi == lo) hi = lo + 1.0;
    width = (hi - lo) / n_bins;
  }

  Histogram h;
  h.bin_lo.resize(static_cast<std::size_t>(n_bins));
  h.bin_hi.resize(static_cast<std::size_t>(n_bins));
  h.count.assign(static_cast<std::size_t>(n_bins), 0);
  for (int b = 0; b < n_bins; ++b) {
    h.bin_lo[static_cast<std::size_t>(b)] = lo + width * b;
    h.bin_hi[static_cast<std::size_t>(b)] = lo + width * (b + 1);
  }
  for (double v : values) {
    auto b = static_cast<std::int64_t>((v - lo) / width);
    b = std::clamp<std::int64_t>(b, 0, n_bins - 1);
    ++h.count[static_cast<std::size_t>(b)];
  }
  return h;
}

std::string histogram_text(const Histogram& h) {
  std::string out;
  for (std::size_t i = 0; i < h.count.size(); ++i) {
    out += format_double(h.bin_lo[i]);
    out += ' ';
    out += format_double(h.bin_hi[i]);
    out += ' ';
    out += std::to_string(h.count[i]);
    out += '\n';
  }
  return out;
}

double count_dispersion(const std::vector<std::int64_t>& counts) {
  if (counts.size() < 2) throw std::invalid_argument("count_dispersion: need >= 2 bins");
  double mean = 0.0;
  for (auto c : counts) mean += static_cast<double>(c);
  mean /= static_cast<double>(counts.size());
  if (mean == 0.0) return 0.0;
  double ss = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - mean;
    ss += d * d;
  }
  return ss / (static_cast<double>(counts.size() - 1)) / mean;
}

namespace {

std::vector<double> to_db(const std::vector<double>& power) {
  std::vector<double> db;
  db.reserve(power.size());
  for (double p : power)
    if (p > 0.0) db.push_back(10.0 * std::log10(p));
  return db;
}

std::vector<double> as_doubles(const std::vector<std::int64_t>& counts) {
  std::vector<double> v;
  v.reserve(counts.size());
  for (auto c : counts) v.push_back(static_cast<double>(c));
  return v;
}

}  // namespace

StatsReport stats_report(double flux_a, const HarnessConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (!(flux_a >= 0.0)) throw std::invalid_argument("stats_report: flux must be >= 0");

  StatsReport report;

  // SPDM side.
  SpdmConfig bright_cfg = cfg.spdm;
  bright_cfg.seed = mix_seed(seed, 101);
  SpdmConfig dark_cfg = cfg.spdm;
  dark_cfg.seed = mix_seed(seed, 102);
  const double flux_b2 = flux_a * cfg.path_to_spdm().total();
  report.spdm_bright = simulate_counts(flux_b2, bright_cfg);
  report.spdm_dark = simulate_counts(0.0, dark_cfg);
  report.spdm_bright_hist = make_histogram(as_doubles(report.spdm_bright.binned_clicks), 40);
  report.spdm_dark_hist = make_histogram(as_doubles(report.spdm_dark.binned_clicks), 40);
  report.spdm_bright_dispersion = count_dispersion(report.spdm_bright.binned_clicks);
  report.spdm_dark_dispersion = count_dispersion(report.spdm_dark.binned_clicks);

  // Homodyne side: signal, bare QNL (no input light), electronics only.
  HomodyneConfig hod = cfg.homodyne;
  hod.seed = mix_seed(seed, 103);
  const double flux_pre_aom = flux_a * cfg.coupler_b1;
  const SidebandField at_b1 = apply_scheme(
      SidebandField::single_sideband(std::sqrt(flux_pre_aom / hod.rbw_measured)), cfg.scheme);
  const auto signal = synthesize_variance_record(at_b1, hod);

  HomodyneConfig qnl_cfg = hod;
  qnl_cfg.seed = mix_seed(seed, 104);
  qnl_cfg.dark_variance = 0.0;
  const auto qnl = synthesize_variance_record(SidebandField::vacuum(), qnl_cfg);

  HomodyneConfig dark_hod = hod;
  dark_hod.seed = mix_seed(seed, 105);
  const auto dark = dark_record_samples(dark_hod);

  report.homodyne_signal_db = make_histogram(to_db(signal), 60);
  report.homodyne_qnl_db = make_histogram(to_db(qnl), 60);
  if (hod.dark_variance > 0.0) report.homodyne_dark_db = make_histogram(to_db(dark), 60);
  report.homodyne_signal_variance = measure_variance(signal).value;
  report.homodyne_qnl_variance = measure_variance(qnl).value;
  report.homodyne_dark_variance = measure_variance(dark).value;
  return report;
}

nlohmann::json stats_summary(const StatsReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSweepCsvVersion;
  j["spdm"] = {{"bright_clicks", report.spdm_bright.clicks},
               {"dark_clicks", report.spdm_dark.clicks},
               {"gates", report.spdm_bright.gates},
               {"bright_dispersion", report.spdm_bright_dispersion},
               {"dark_dispersion", report.spdm_dark_dispersion}};
  j["homodyne"] = {{"signal_variance", report.homodyne_signal_variance},
                   {"qnl_variance", report.homodyne_qnl_variance},
                   {"dark_variance", report.homodyne_dark_variance}};
  return j;
}

}  // namespace sbflux
