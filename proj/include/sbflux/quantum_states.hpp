#pragma once

#include <complex>

#include "sbflux/constants.hpp"

namespace sbflux {

// Parametric description of the optical state in the sideband pair at
// +/-omega relative to the local oscillator. Amplitudes are dimensionless;
// |alpha|^2 counts photons per mode within one analysis bandwidth.
//
// All variances in this library are QNL-relative: the vacuum quadrature
// variance is 1 and enters every spectrum as the unit term.
struct SidebandField {
  std::complex<double> alpha_plus{0.0, 0.0};   // coherent amplitude at +omega
  std::complex<double> alpha_minus{0.0, 0.0};  // coherent amplitude at -omega
  double r = 0.0;                              // squeeze factor, >= 0
  bool squeezed = false;                       // amplitude-squeezed when set
  bool vacuum_minus = false;  // -omega sideband is an uncorrelated vacuum mode

  /// Empty field: unit variance at every quadrature angle.
  static SidebandField vacuum();

  /// Coherent tone at the analysis frequency: equal upper and lower
  /// sideband amplitudes, so V(0) = 4 Re(alpha)^2 + 1.
  static SidebandField coherent(std::complex<double> alpha);

  /// Amplitude-squeezed vacuum across the sideband pair:
  /// V(0) = exp(-2r), V(pi/2) = exp(+2r).
  static SidebandField squeezed_vacuum(double r);

  /// Field occupying only the +omega sideband, vacuum in the mirror mode.
  static SidebandField single_sideband(std::complex<double> alpha, double r = 0.0,
                                       bool squeezed = false);

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

// Orthogonal quadrature-variance pair in QNL-relative units.
struct QuadratureVariance {
  double v_plus = 1.0;   // amplitude quadrature
  double v_minus = 1.0;  // phase quadrature
  void validate() const;
};

/// Spectral power of the quadrature at angle theta: photon terms of both
/// sidebands, the cross-sideband correlation rotated by exp(2i*theta), and
/// the unit vacuum term. Total on valid fields.
double variance_spectrum(const SidebandField& field, double theta);

/// (v+ + v- - 2) / 4: mean photons per mode averaged over both sidebands.
/// The raw value is returned; negative results from noisy inputs are the
/// caller's signal to handle.
double mean_photon_from_variances(const QuadratureVariance& v);

/// Variance pair of a coherent tone: (4 Re(a)^2 + 1, 4 Im(a)^2 + 1).
QuadratureVariance coherent_variances(std::complex<double> alpha);

/// |alpha|^2 + sinh^2(r). Rejects r < 0.
double squeezed_photon_number(std::complex<double> alpha, double r);

/// Squeeze factor of a gain-G amplifier, r = ln(sqrt(G) + sqrt(G - 1)).
/// Monotone in G with r(1) = 0. Rejects G < 1.
double squeeze_factor_from_gain(double gain);

/// Photon flux of an optical beam, P * lambda / (h c), in photons/s.
/// Rejects negative power or non-positive wavelength.
double flux_from_power(double power_watts, double wavelength_m);

}  // namespace sbflux
