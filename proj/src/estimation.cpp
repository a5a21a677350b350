#include "sbflux/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace sbflux {

double OpticalPath::total() const {
  double t = 1.0;
  for (const auto& e : elements) t *= e.transmission;
  return t;
}

void OpticalPath::validate() const {
  for (const auto& e : elements)
    if (!(e.transmission > 0.0 && e.transmission <= 1.0))
      throw std::invalid_argument("OpticalPath: transmission of '" + e.label +
                                  "' must be in (0, 1]");
}

const char* to_string(FluxMethod method) {
  switch (method) {
    case FluxMethod::quantum: return "quantum";
    case FluxMethod::semiclassical: return "semiclassical";
    case FluxMethod::spdm_linear: return "spdm_linear";
    case FluxMethod::spdm_log: return "spdm_log";
  }
  return "unknown";
}

FluxEstimate make_flux_estimate(double phi, double sigma, FluxMethod method,
                                const std::string& point) {
  FluxEstimate est;
  est.method = method;
  est.point = point;
  est.sigma = sigma;
  if (phi < 0.0) {
    est.phi = 0.0;
    est.negative_mean_deleted = true;
  } else {
    est.phi = phi;
  }
  return est;
}

FluxEstimate homodyne_flux_quantum(const VarianceEstimate& v, const HomodyneConfig& cfg,
                                   const std::string& point) {
  if (!v.dark_subtracted)
    throw std::invalid_argument("homodyne_flux_quantum: variance must be dark-subtracted");
  const double scale = cfg.rbw_measured / effective_efficiency(cfg);
  return make_flux_estimate((v.value - 1.0) * scale, v.sigma * scale, FluxMethod::quantum,
                            point);
}

FluxEstimate homodyne_flux_semiclassical(const VarianceEstimate& v, const HomodyneConfig& cfg,
                                         const std::string& point) {
  if (!v.dark_subtracted)
    throw std::invalid_argument("homodyne_flux_semiclassical: variance must be dark-subtracted");
  const double scale = cfg.rbw_measured / effective_efficiency(cfg);
  return make_flux_estimate(v.value * scale, v.sigma * scale, FluxMethod::semiclassical,
                            point);
}

FluxEstimate refer_to_reference(const FluxEstimate& at_detector, const OpticalPath& path) {
  path.validate();
  const double t = path.total();
  if (!(t > 0.0)) throw std::invalid_argument("refer_to_reference: path transmission is zero");
  FluxEstimate est = at_detector;
  est.phi /= t;
  est.sigma /= t;
  est.point = "A";
  return est;
}

double statistical_sigma(std::int64_t n_samples, double base_sigma_1) {
  if (n_samples < 1) throw std::invalid_argument("statistical_sigma: N must be >= 1");
  return base_sigma_1 / std::sqrt(static_cast<double>(n_samples));
}

}  // namespace sbflux
