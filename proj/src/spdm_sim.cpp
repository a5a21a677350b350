#include "sbflux/spdm_sim.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sbflux/philox.hpp"

namespace sbflux {

namespace {

// floor with a one-ulp-scale nudge so quotients like 300 / 10e-6 land on
// the intended integer instead of one below it.
std::int64_t floor_count(double value) {
  return static_cast<std::int64_t>(std::floor(value * (1.0 + 4.0 * DBL_EPSILON)));
}

}  // namespace

std::int64_t SpdmConfig::gate_count() const {
  return floor_count(integration_seconds / gate_interval);
}

void SpdmConfig::validate() const {
  if (!(eta_s > 0.0 && eta_s <= 1.0))
    throw std::invalid_argument("SpdmConfig: eta_s must be in (0, 1]");
  if (!(gate_width > 0.0 && gate_width < gate_interval))
    throw std::invalid_argument("SpdmConfig: need 0 < gate_width < gate_interval");
  if (!(integration_seconds > 0.0))
    throw std::invalid_argument("SpdmConfig: integration_seconds must be > 0");
  if (!(dark_rate >= 0.0)) throw std::invalid_argument("SpdmConfig: dark_rate must be >= 0");
  if (!(background_flux >= 0.0))
    throw std::invalid_argument("SpdmConfig: background_flux must be >= 0");
  if (!(afterpulse_prob >= 0.0 && afterpulse_prob <= 1.0))
    throw std::invalid_argument("SpdmConfig: afterpulse_prob must be in [0, 1]");
}

double click_probability(double flux_at_apd, const SpdmConfig& cfg) {
  if (!(flux_at_apd >= 0.0))
    throw std::invalid_argument("click_probability: flux must be >= 0");
  const double mu =
      (cfg.eta_s * (flux_at_apd + cfg.background_flux) + cfg.dark_rate) * cfg.gate_width;
  return -std::expm1(-mu);
}

namespace {

// Display bin of a gate; one-second bins.
inline std::size_t bin_of(std::int64_t gate, double interval) {
  return static_cast<std::size_t>(static_cast<double>(gate) * interval);
}

CountRecord simulate_impl(double flux_at_apd, const SpdmConfig& cfg, bool parallel) {
  cfg.validate();
  const double p = click_probability(flux_at_apd, cfg);
  const std::int64_t gates = cfg.gate_count();

  CountRecord rec;
  rec.gates = gates;
  if (gates <= 0) return rec;

  const double interval = cfg.gate_interval;
  const std::size_t n_bins = bin_of(gates - 1, interval) + 1;
  rec.binned_clicks.assign(n_bins, 0);

  if (cfg.afterpulse_prob > 0.0 || !parallel) {
    // Afterpulsing couples a gate to its predecessor, so the chain resolves
    // in one sequential pass; the draws stay counter-based regardless.
    bool previous = false;
    for (std::int64_t g = 0; g < gates; ++g) {
      const auto blk =
          rng_block(cfg.seed, static_cast<std::uint64_t>(g >> 2), 0, RngDomain::spdm_primary);
      bool click = uniform32(blk[g & 3]) < p;
      if (!click && previous && cfg.afterpulse_prob > 0.0) {
        const auto ap = rng_block(cfg.seed, static_cast<std::uint64_t>(g >> 2), 0,
                                  RngDomain::spdm_afterpulse);
        click = uniform32(ap[g & 3]) < cfg.afterpulse_prob;
      }
      if (click) ++rec.binned_clicks[bin_of(g, interval)];
      previous = click;
    }
  } else {
    // One Philox block covers four consecutive gates. Clicks are integer
    // counts, so any merge order gives the same record.
    const std::int64_t n_blocks = (gates + 3) / 4;
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::int64_t> local(n_bins, 0);
#pragma omp for schedule(static) nowait
      for (std::int64_t b = 0; b < n_blocks; ++b) {
        const auto blk =
            rng_block(cfg.seed, static_cast<std::uint64_t>(b), 0, RngDomain::spdm_primary);
        const std::int64_t g_end = std::min(gates, 4 * b + 4);
        for (std::int64_t g = 4 * b; g < g_end; ++g)
          if (uniform32(blk[g & 3]) < p) ++local[bin_of(g, interval)];
      }
#pragma omp critical
      for (std::size_t i = 0; i < n_bins; ++i) rec.binned_clicks[i] += local[i];
    }
#else
    for (std::int64_t b = 0; b < n_blocks; ++b) {
      const auto blk =
          rng_block(cfg.seed, static_cast<std::uint64_t>(b), 0, RngDomain::spdm_primary);
      const std::int64_t g_end = std::min(gates, 4 * b + 4);
      for (std::int64_t g = 4 * b; g < g_end; ++g)
        if (uniform32(blk[g & 3]) < p) ++rec.binned_clicks[bin_of(g, interval)];
    }
#endif
  }

  for (std::int64_t c : rec.binned_clicks) rec.clicks += c;
  return rec;
}

}  // namespace

CountRecord simulate_counts(double flux_at_apd, const SpdmConfig& cfg) {
#ifdef _OPENMP
  return simulate_impl(flux_at_apd, cfg, !omp_in_parallel());
#else
  return simulate_impl(flux_at_apd, cfg, false);
#endif
}

CountRecord simulate_counts_serial(double flux_at_apd, const SpdmConfig& cfg) {
  return simulate_impl(flux_at_apd, cfg, false);
}

FluxEstimate estimate_flux_from_counts(const CountRecord& bright, const CountRecord& dark,
                                       const SpdmConfig& cfg, SpdmEstimator mode,
                                       const std::string& point) {
  cfg.validate();
  if (bright.gates <= 0 || bright.gates != dark.gates)
    throw std::invalid_argument("estimate_flux_from_counts: records must share a gate count");

  const auto gates = static_cast<double>(bright.gates);
  const double denom = cfg.gate_width * cfg.eta_s;
  double phi = 0.0;
  double sigma = 0.0;
  FluxMethod method = FluxMethod::spdm_linear;

  if (mode == SpdmEstimator::linear) {
    phi = static_cast<double>(bright.clicks - dark.clicks) / (gates * denom);
    sigma = std::sqrt(static_cast<double>(bright.clicks + dark.clicks)) / (gates * denom);
  } else {
    const double p_b = static_cast<double>(bright.clicks) / gates;
    const double p_d = static_cast<double>(dark.clicks) / gates;
    if (p_b >= 1.0 || p_d >= 1.0)
      throw std::invalid_argument(
          "estimate_flux_from_counts: saturated record, log correction uninvertible");
    phi = (-std::log1p(-p_b) + std::log1p(-p_d)) / denom;
    // Binomial click-fraction error propagated through the log inverse.
    const double var_mu =
        p_b / ((1.0 - p_b) * gates) + p_d / ((1.0 - p_d) * gates);
    sigma = std::sqrt(var_mu) / denom;
    method = FluxMethod::spdm_log;
  }
  return make_flux_estimate(phi, sigma, method, point);
}

}  // namespace sbflux
