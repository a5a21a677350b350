#include "sbflux/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sbflux/homodyne_sim.hpp"
#include "sbflux/philox.hpp"

namespace sbflux {

OpticalPath HarnessConfig::path_to_homodyne() const {
  return {{{"aom", scheme.aom_transmission}, {"coupler_b1", coupler_b1}}};
}

OpticalPath HarnessConfig::path_to_spdm() const {
  return {{{"aom", scheme.aom_transmission}, {"coupler_b2", coupler_b2}}};
}

void HarnessConfig::validate() const {
  if (!(wavelength > 0.0)) throw std::invalid_argument("config: wavelength must be > 0");
  scheme.validate();
  homodyne.validate();
  spdm.validate();
  path_to_homodyne().validate();
  path_to_spdm().validate();
}

HarnessConfig HarnessConfig::defaults() {
  HarnessConfig cfg;
  cfg.scheme.aom_transmission = 0.25;  // second-order diffraction arm
  cfg.homodyne.eta_det = 0.9;
  cfg.homodyne.dark_variance = 0.1;
  return cfg;
}

namespace {

void apply_keys(const nlohmann::json& section, const std::string& name,
                const std::map<std::string, double*>& keys) {
  if (!section.is_object())
    throw std::invalid_argument("config: section '" + name + "' must be an object");
  for (const auto& [key, value] : section.items()) {
    auto it = keys.find(key);
    if (it == keys.end())
      throw std::invalid_argument("config: unknown key '" + name + "." + key + "'");
    if (!value.is_number())
      throw std::invalid_argument("config: '" + name + "." + key + "' must be a number");
    *it->second = value.get<double>();
  }
}

}  // namespace

HarnessConfig load_config(const nlohmann::json& j) {
  HarnessConfig cfg = HarnessConfig::defaults();
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

  for (const auto& [section, value] : j.items()) {
    if (section == "wavelength") {
      cfg.wavelength = value.get<double>();
    } else if (section == "scheme") {
      nlohmann::json rest = value;
      if (rest.contains("direction")) {
        const auto dir = rest["direction"].get<std::string>();
        if (dir == "signal_upshifted")
          cfg.scheme.direction = ShiftDirection::signal_upshifted;
        else if (dir == "lo_upshifted")
          cfg.scheme.direction = ShiftDirection::lo_upshifted;
        else
          throw std::invalid_argument("config: scheme.direction must be "
                                      "signal_upshifted or lo_upshifted");
        rest.erase("direction");
      }
      apply_keys(rest, "scheme",
                 {{"omega_aom", &cfg.scheme.omega_aom},
                  {"detection_center", &cfg.scheme.detection_center},
                  {"aom_transmission", &cfg.scheme.aom_transmission}});
    } else if (section == "homodyne") {
      apply_keys(value, "homodyne",
                 {{"eta_det", &cfg.homodyne.eta_det},
                  {"visibility", &cfg.homodyne.visibility},
                  {"lo_phase", &cfg.homodyne.lo_phase},
                  {"rbw_nominal", &cfg.homodyne.rbw_nominal},
                  {"rbw_measured", &cfg.homodyne.rbw_measured},
                  {"record_seconds", &cfg.homodyne.record_seconds},
                  {"dark_variance", &cfg.homodyne.dark_variance}});
    } else if (section == "spdm") {
      apply_keys(value, "spdm",
                 {{"eta_s", &cfg.spdm.eta_s},
                  {"gate_width", &cfg.spdm.gate_width},
                  {"gate_interval", &cfg.spdm.gate_interval},
                  {"integration_seconds", &cfg.spdm.integration_seconds},
                  {"dark_rate", &cfg.spdm.dark_rate},
                  {"background_flux", &cfg.spdm.background_flux},
                  {"afterpulse_prob", &cfg.spdm.afterpulse_prob}});
    } else if (section == "paths") {
      apply_keys(value, "paths",
                 {{"coupler_b1", &cfg.coupler_b1}, {"coupler_b2", &cfg.coupler_b2}});
    } else {
      throw std::invalid_argument("config: unknown section '" + section + "'");
    }
  }
  cfg.validate();
  return cfg;
}

HarnessConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: parse failure in '" + path + "': " + e.what());
  }
  return load_config(j);
}

std::vector<double> SweepSpec::default_flux_grid() {
  std::vector<double> grid;
  grid.reserve(29);
  for (int k = 0; k < 29; ++k) grid.push_back(std::pow(10.0, 2.0 + 0.25 * k));
  return grid;
}

void SweepSpec::validate() const {
  config.validate();
  if (repetitions < 1) throw std::invalid_argument("sweep: repetitions must be >= 1");
  for (std::size_t i = 0; i < flux_points.size(); ++i) {
    if (!(flux_points[i] > 0.0))
      throw std::invalid_argument("sweep: flux points must be > 0");
    if (i > 0 && flux_points[i] < flux_points[i - 1])
      throw std::invalid_argument("sweep: flux points must be sorted ascending");
  }
}

namespace {

SweepRow run_one(const SweepSpec& spec, std::size_t point_idx, int rep) {
  const HarnessConfig& cfg = spec.config;
  SweepRow row;
  row.flux_a = spec.flux_points[point_idx];
  row.repetition = rep;

  const std::uint64_t row_uid = (static_cast<std::uint64_t>(point_idx) << 20) |
                                static_cast<std::uint64_t>(rep);
  try {
    const OpticalPath to_b1 = cfg.path_to_homodyne();
    const OpticalPath to_b2 = cfg.path_to_spdm();

    // Homodyne arm: coherent field at A attenuated by the B1 coupler, then
    // frequency-translated onto the +omega sideband by the scheme.
    const double flux_pre_aom = row.flux_a * cfg.coupler_b1;
    const double alpha_in = std::sqrt(flux_pre_aom / cfg.homodyne.rbw_measured);
    const SidebandField at_b1 =
        apply_scheme(SidebandField::single_sideband(alpha_in), cfg.scheme);

    HomodyneConfig hod = cfg.homodyne;
    hod.seed = mix_seed(spec.seed, row_uid * 4 + 0);
    const VarianceEstimate bright = measure_variance(synthesize_variance_record(at_b1, hod));
    const VarianceEstimate dark = dark_record(hod);
    const VarianceEstimate net = subtract_dark(bright, dark);

    row.quantum = refer_to_reference(homodyne_flux_quantum(net, hod), to_b1);
    row.semiclassical = refer_to_reference(homodyne_flux_semiclassical(net, hod), to_b1);

    // SPDM arm: only the photon flux at B2 matters for counting.
    const double flux_b2 = row.flux_a * to_b2.total();
    SpdmConfig spdm_bright = cfg.spdm;
    spdm_bright.seed = mix_seed(spec.seed, row_uid * 4 + 2);
    SpdmConfig spdm_dark = cfg.spdm;
    spdm_dark.seed = mix_seed(spec.seed, row_uid * 4 + 3);

    const CountRecord counts = simulate_counts(flux_b2, spdm_bright);
    const CountRecord counts_dark = simulate_counts(0.0, spdm_dark);

    row.spdm_linear = refer_to_reference(
        estimate_flux_from_counts(counts, counts_dark, cfg.spdm, SpdmEstimator::linear), to_b2);
    row.spdm_log = refer_to_reference(
        estimate_flux_from_counts(counts, counts_dark, cfg.spdm, SpdmEstimator::log_corrected),
        to_b2);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::int64_t n_points = static_cast<std::int64_t>(spec.flux_points.size());
  const std::int64_t n_rows = n_points * spec.repetitions;
  std::vector<SweepRow> rows(static_cast<std::size_t>(n_rows));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < n_rows; ++i) {
    const auto point_idx = static_cast<std::size_t>(i / spec.repetitions);
    const int rep = static_cast<int>(i % spec.repetitions);
    rows[static_cast<std::size_t>(i)] = run_one(spec, point_idx, rep);
  }
  return rows;
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

void append_csv_line(std::string& out, double flux_a, const FluxEstimate& est) {
  out += format_double(flux_a);
  out += ',';
  out += to_string(est.method);
  out += ',';
  out += format_double(est.phi);
  out += ',';
  out += format_double(est.sigma);
  out += ',';
  out += est.negative_mean_deleted ? '1' : '0';
  out += '\n';
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    if (!row.error.empty()) continue;
    append_csv_line(out, row.flux_a, row.quantum);
    append_csv_line(out, row.flux_a, row.semiclassical);
    append_csv_line(out, row.flux_a, row.spdm_linear);
    append_csv_line(out, row.flux_a, row.spdm_log);
  }
  return out;
}

std::vector<CsvEntry> parse_sweep_csv(std::istream& in) {
  std::vector<CsvEntry> entries;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  if (line != kSweepCsvHeader)
    throw std::invalid_argument("csv: unexpected header '" + line + "'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    CsvEntry e;
    std::getline(ss, field, ',');
    e.flux_a = std::stod(field);
    std::getline(ss, e.method, ',');
    std::getline(ss, field, ',');
    e.phi = std::stod(field);
    std::getline(ss, field, ',');
    e.sigma = std::stod(field);
    std::getline(ss, field, ',');
    e.flagged = field == "1";
    entries.push_back(std::move(e));
  }
  return entries;
}

namespace {

struct DecadeAccumulator {
  std::int64_t n = 0;
  std::int64_t deleted = 0;
  double sum_rel = 0.0;
  double sum_rel_sq = 0.0;
  double sum_abs_rel = 0.0;
};

nlohmann::json report_from(
    const std::map<int, std::map<std::string, DecadeAccumulator>>& decades) {
  nlohmann::json decades_json = nlohmann::json::array();
  std::map<std::string, std::vector<std::pair<int, bool>>> usable_by_method;

  for (const auto& [decade, methods] : decades) {
    nlohmann::json entry;
    entry["decade"] = decade;
    entry["flux_lo"] = std::pow(10.0, decade);
    entry["flux_hi"] = std::pow(10.0, decade + 1);
    nlohmann::json methods_json;
    for (const auto& [method, acc] : methods) {
      const double n = static_cast<double>(acc.n);
      const double bias = acc.sum_rel / n;
      const double mean_abs = acc.sum_abs_rel / n;
      const double var = std::max(0.0, acc.sum_rel_sq / n - bias * bias);
      const bool usable = std::abs(bias) < 0.10 && mean_abs < 0.10;
      nlohmann::json m;
      m["n"] = acc.n;
      m["deleted"] = acc.deleted;
      m["mean_rel_bias"] = bias;
      m["spread"] = std::sqrt(var);
      m["mean_abs_rel_err"] = mean_abs;
      m["usable"] = usable;
      methods_json[method] = m;
      usable_by_method[method].emplace_back(decade, usable);
    }
    entry["methods"] = methods_json;
    decades_json.push_back(entry);
  }

  nlohmann::json summary;
  for (auto& [method, flags] : usable_by_method) {
    std::sort(flags.begin(), flags.end());
    int best_run = 0;
    int run = 0;
    int total = 0;
    nlohmann::json usable_list = nlohmann::json::array();
    for (std::size_t i = 0; i < flags.size(); ++i) {
      const bool contiguous = i > 0 && flags[i].first == flags[i - 1].first + 1;
      if (flags[i].second) {
        ++total;
        usable_list.push_back(flags[i].first);
        run = (i > 0 && flags[i - 1].second && contiguous) ? run + 1 : 1;
        best_run = std::max(best_run, run);
      } else {
        run = 0;
      }
    }
    summary[method] = {{"usable_decades", usable_list},
                       {"usable_count", total},
                       {"usable_span", best_run}};
  }

  nlohmann::json report;
  report["schema_version"] = kSweepCsvVersion;
  report["decades"] = decades_json;
  report["methods"] = summary;
  return report;
}

}  // namespace

nlohmann::json model_report(const std::vector<CsvEntry>& entries) {
  if (entries.empty()) throw std::invalid_argument("model_report: no rows");
  std::map<int, std::map<std::string, DecadeAccumulator>> decades;
  for (const auto& e : entries) {
    const int decade = static_cast<int>(std::floor(std::log10(e.flux_a)));
    auto& acc = decades[decade][e.method];
    const double rel = (e.phi - e.flux_a) / e.flux_a;
    ++acc.n;
    if (e.flagged) ++acc.deleted;
    acc.sum_rel += rel;
    acc.sum_rel_sq += rel * rel;
    acc.sum_abs_rel += std::abs(rel);
  }
  return report_from(decades);
}

nlohmann::json model_report(const std::vector<SweepRow>& rows) {
  std::vector<CsvEntry> entries;
  entries.reserve(rows.size() * 4);
  for (const auto& row : rows) {
    if (!row.error.empty()) continue;
    for (const FluxEstimate* est :
         {&row.quantum, &row.semiclassical, &row.spdm_linear, &row.spdm_log}) {
      entries.push_back(
          {row.flux_a, to_string(est->method), est->phi, est->sigma, est->negative_mean_deleted});
    }
  }
  return model_report(entries);
}

}  // namespace sbflux
