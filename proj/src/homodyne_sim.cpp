#include "sbflux/homodyne_sim.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sbflux/philox.hpp"

namespace sbflux {

std::int64_t HomodyneConfig::sample_count() const {
  return static_cast<std::int64_t>(std::floor(record_seconds * rbw_measured));
}

void HomodyneConfig::validate() const {
  if (!(eta_det > 0.0 && eta_det <= 1.0))
    throw std::invalid_argument("HomodyneConfig: eta_det must be in (0, 1]");
  if (!(visibility > 0.0 && visibility <= 1.0))
    throw std::invalid_argument("HomodyneConfig: visibility must be in (0, 1]");
  if (!(rbw_measured > 0.0))
    throw std::invalid_argument("HomodyneConfig: rbw_measured must be > 0");
  if (!(record_seconds > 0.0))
    throw std::invalid_argument("HomodyneConfig: record_seconds must be > 0");
  if (!(dark_variance >= 0.0))
    throw std::invalid_argument("HomodyneConfig: dark_variance must be >= 0");
  if (sample_count() < 2)
    throw std::invalid_argument("HomodyneConfig: record must contain at least 2 RBW bins");
}

double effective_efficiency(const HomodyneConfig& cfg) {
  return cfg.visibility * cfg.visibility * cfg.eta_det;
}

namespace {

// Power of one complex Gaussian bin, |z|^2 / 2 with Var(Re z) = var_per_quad.
inline double bin_power(double var_per_quad, std::uint64_t seed, std::int64_t bin,
                        RngDomain domain) {
  const auto [x, y] = normal_pair(seed, static_cast<std::uint64_t>(bin), 0, domain);
  return var_per_quad * 0.5 * (x * x + y * y);
}

std::vector<double> power_record(double var_per_quad, std::int64_t n, std::uint64_t seed,
                                 RngDomain domain, bool parallel) {
  std::vector<double> samples(static_cast<std::size_t>(n));
#ifdef _OPENMP
  if (parallel && !omp_in_parallel()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      samples[static_cast<std::size_t>(i)] = bin_power(var_per_quad, seed, i, domain);
    return samples;
  }
#else
  (void)parallel;
#endif
  for (std::int64_t i = 0; i < n; ++i)
    samples[static_cast<std::size_t>(i)] = bin_power(var_per_quad, seed, i, domain);
  return samples;
}

double bright_variance_per_quad(const SidebandField& field, const HomodyneConfig& cfg) {
  const double v_true = variance_spectrum(field, cfg.lo_phase);
  return effective_efficiency(cfg) * (v_true - 1.0) + 1.0 + cfg.dark_variance;
}

}  // namespace

std::vector<double> synthesize_variance_record(const SidebandField& field,
                                               const HomodyneConfig& cfg) {
  cfg.validate();
  field.validate();
  return power_record(bright_variance_per_quad(field, cfg), cfg.sample_count(), cfg.seed,
                      RngDomain::homodyne_bright, true);
}

std::vector<double> synthesize_variance_record_serial(const SidebandField& field,
                                                      const HomodyneConfig& cfg) {
  cfg.validate();
  field.validate();
  return power_record(bright_variance_per_quad(field, cfg), cfg.sample_count(), cfg.seed,
                      RngDomain::homodyne_bright, false);
}

VarianceEstimate measure_variance(const std::vector<double>& samples) {
  const auto n = static_cast<std::int64_t>(samples.size());
  if (n < 2) throw std::invalid_argument("measure_variance: need at least 2 samples");

  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);

  double ss = 0.0;
  for (double s : samples) {
    const double d = s - mean;
    ss += d * d;
  }
  const double sample_std = std::sqrt(ss / static_cast<double>(n - 1));

  VarianceEstimate est;
  est.value = mean;
  est.n_samples = n;
  est.sigma = sample_std / std::sqrt(static_cast<double>(n));
  est.dark_subtracted = false;
  return est;
}

std::vector<double> dark_record_samples(const HomodyneConfig& cfg) {
  cfg.validate();
  return power_record(cfg.dark_variance, cfg.sample_count(), cfg.seed,
                      RngDomain::homodyne_dark, true);
}

VarianceEstimate dark_record(const HomodyneConfig& cfg) {
  return measure_variance(dark_record_samples(cfg));
}

VarianceEstimate subtract_dark(const VarianceEstimate& measured, const VarianceEstimate& dark) {
  if (measured.dark_subtracted || dark.dark_subtracted)
    throw std::invalid_argument("subtract_dark: inputs must be unsubtracted");
  VarianceEstimate est;
  est.value = measured.value - dark.value;
  est.n_samples = measured.n_samples;
  est.sigma = std::sqrt(measured.sigma * measured.sigma + dark.sigma * dark.sigma);
  est.dark_subtracted = true;
  return est;
}

}  // namespace sbflux
