#include "sbflux/quantum_states.hpp"

#include <cmath>
#include <stdexcept>

namespace sbflux {

SidebandField SidebandField::vacuum() { return {}; }

SidebandField SidebandField::coherent(std::complex<double> alpha) {
  SidebandField f;
  f.alpha_plus = alpha;
  f.alpha_minus = alpha;
  return f;
}

SidebandField SidebandField::squeezed_vacuum(double r) {
  if (r < 0.0) throw std::invalid_argument("squeezed_vacuum: r must be >= 0");
  SidebandField f;
  f.r = r;
  f.squeezed = true;
  return f;
}

SidebandField SidebandField::single_sideband(std::complex<double> alpha, double r,
                                             bool squeezed) {
  SidebandField f;
  f.alpha_plus = alpha;
  f.r = r;
  f.squeezed = squeezed;
  f.vacuum_minus = true;
  f.validate();
  return f;
}

void SidebandField::validate() const {
  if (!(r >= 0.0)) throw std::invalid_argument("SidebandField: r must be >= 0");
  if (vacuum_minus && alpha_minus != std::complex<double>{0.0, 0.0})
    throw std::invalid_argument("SidebandField: vacuum_minus requires alpha_minus = 0");
}

void QuadratureVariance::validate() const {
  if (!(v_plus >= 0.0) || !(v_minus >= 0.0))
    throw std::invalid_argument("QuadratureVariance: variances must be >= 0");
  if (v_plus * v_minus < 1.0 - 1e-12)
    throw std::invalid_argument("QuadratureVariance: v+ * v- must be >= 1");
}

double variance_spectrum(const SidebandField& field, double theta) {
  const double sinh_r = field.squeezed ? std::sinh(field.r) : 0.0;
  const double n_squeeze = sinh_r * sinh_r;

  const double n_plus = std::norm(field.alpha_plus) + n_squeeze;
  double n_minus = 0.0;
  std::complex<double> correlation{0.0, 0.0};
  if (!field.vacuum_minus) {
    // The squeeze transformation pairs the sidebands; a vacuum mirror mode
    // kills both the photon term and the correlation exactly.
    n_minus = std::norm(field.alpha_minus) + n_squeeze;
    correlation = field.alpha_plus * field.alpha_minus;
    if (field.squeezed) correlation -= sinh_r * std::cosh(field.r);
  }

  const std::complex<double> rotation = std::polar(1.0, 2.0 * theta);
  return n_plus + n_minus + 2.0 * (correlation * rotation).real() + 1.0;
}

double mean_photon_from_variances(const QuadratureVariance& v) {
  return (v.v_plus + v.v_minus - 2.0) / 4.0;
}

QuadratureVariance coherent_variances(std::complex<double> alpha) {
  const double re = alpha.real();
  const double im = alpha.imag();
  return {4.0 * re * re + 1.0, 4.0 * im * im + 1.0};
}

double squeezed_photon_number(std::complex<double> alpha, double r) {
  if (r < 0.0) throw std::invalid_argument("squeezed_photon_number: r must be >= 0");
  const double sinh_r = std::sinh(r);
  return std::norm(alpha) + sinh_r * sinh_r;
}

double squeeze_factor_from_gain(double gain) {
  if (gain < 1.0) throw std::invalid_argument("squeeze_factor_from_gain: G must be >= 1");
  // -ln(sqrt(G) - sqrt(G-1)) rewritten with the conjugate to stay accurate
  // at large gain.
  return std::log(std::sqrt(gain) + std::sqrt(gain - 1.0));
}

double flux_from_power(double power_watts, double wavelength_m) {
  if (power_watts < 0.0) throw std::invalid_argument("flux_from_power: P must be >= 0");
  if (!(wavelength_m > 0.0))
    throw std::invalid_argument("flux_from_power: wavelength must be > 0");
  return power_watts * wavelength_m /
         (PhysicalConstants::planck * PhysicalConstants::speed_of_light);
}

}  // namespace sbflux
