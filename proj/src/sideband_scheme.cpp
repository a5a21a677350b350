#include "sbflux/sideband_scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace sbflux {

void SchemeConfig::validate() const {
  if (!(detection_center > 0.0))
    throw std::invalid_argument("SchemeConfig: detection_center must be > 0");
  if (!(omega_aom > 0.0)) throw std::invalid_argument("SchemeConfig: omega_aom must be > 0");
  if (!(aom_transmission >= 0.0 && aom_transmission <= 1.0))
    throw std::invalid_argument("SchemeConfig: aom_transmission must be in [0, 1]");
}

SidebandField apply_scheme(const SidebandField& input, const SchemeConfig& cfg) {
  cfg.validate();
  input.validate();

  const bool plus_occupied = input.alpha_plus != std::complex<double>{0.0, 0.0};
  const bool minus_occupied = input.alpha_minus != std::complex<double>{0.0, 0.0};
  if (plus_occupied && minus_occupied)
    throw std::invalid_argument("apply_scheme: input must occupy a single mode");

  const std::complex<double> amplitude = plus_occupied ? input.alpha_plus : input.alpha_minus;

  SidebandField out;
  out.alpha_plus = amplitude * std::sqrt(cfg.aom_transmission);
  out.alpha_minus = {0.0, 0.0};
  out.r = input.r;
  out.squeezed = input.squeezed;
  out.vacuum_minus = true;
  return out;
}

double single_sideband_photon_number(double variance) { return variance - 1.0; }

std::vector<std::pair<double, double>> phase_sweep(const SidebandField& field, int n_points) {
  if (n_points < 2) throw std::invalid_argument("phase_sweep: n_points must be >= 2");
  std::vector<std::pair<double, double>> sweep;
  sweep.reserve(static_cast<std::size_t>(n_points));
  const double step = 2.0 * M_PI / n_points;
  for (int i = 0; i < n_points; ++i) {
    const double theta = step * i;
    sweep.emplace_back(theta, variance_spectrum(field, theta));
  }
  return sweep;
}

}  // namespace sbflux
