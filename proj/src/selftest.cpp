#include "sbflux/selftest.hpp"

#include <cmath>
#include <complex>
#include <ostream>

#include "sbflux/philox.hpp"
#include "sbflux/quantum_states.hpp"
#include "sbflux/sideband_scheme.hpp"

namespace sbflux {

namespace {

constexpr std::uint64_t kSelftestSeed = 0x5bf1u;

bool close_rel(double actual, double expected, double tol) {
  const double scale = std::max(1.0, std::abs(expected));
  return std::abs(actual - expected) <= tol * scale;
}

struct Reporter {
  std::ostream& out;
  bool all_ok = true;
  void check(bool ok, const char* what, double worst) {
    all_ok = all_ok && ok;
    out << (ok ? "ok  " : "FAIL") << "  " << what << "  (max deviation " << worst << ")\n";
  }
};

}  // namespace

bool run_selftest(std::ostream& out) {
  Reporter rep{out};

  // Coherent states: photon number recovered from the variance pair equals
  // |alpha|^2, both from the closed form and through the spectrum at an
  // orthogonal angle pair.
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto blk = rng_block(kSelftestSeed, static_cast<std::uint64_t>(i), 0,
                               RngDomain::selftest);
    const double mag = 0.1 + 9.9 * uniform53(blk[0], blk[1]);
    const double phase = 2.0 * M_PI * uniform53(blk[2], blk[3]);
    const std::complex<double> alpha = std::polar(mag, phase);
    const double expected = std::norm(alpha);

    const double direct = mean_photon_from_variances(coherent_variances(alpha));
    const SidebandField field = SidebandField::coherent(alpha);
    const double via_spectrum = mean_photon_from_variances(
        {variance_spectrum(field, 0.0), variance_spectrum(field, M_PI / 2.0)});

    worst = std::max(worst, std::abs(direct - expected) / expected);
    worst = std::max(worst, std::abs(via_spectrum - expected) / expected);
  }
  rep.check(worst <= 1e-12, "coherent photon number = |alpha|^2 (1000 random states)", worst);

  // Squeezed vacuum: photon number equals sinh^2 r across r in [0, 3].
  worst = 0.0;
  for (int i = 0; i <= 30; ++i) {
    const double r = 0.1 * i;
    const double expected = std::sinh(r) * std::sinh(r);
    const SidebandField field = SidebandField::squeezed_vacuum(r);
    const double got = mean_photon_from_variances(
        {variance_spectrum(field, 0.0), variance_spectrum(field, M_PI / 2.0)});
    const double closed = mean_photon_from_variances(
        {std::exp(-2.0 * r), std::exp(2.0 * r)});
    worst = std::max(worst, std::abs(got - expected) / std::max(1.0, expected));
    worst = std::max(worst, std::abs(closed - expected) / std::max(1.0, expected));
  }
  rep.check(worst <= 1e-12, "squeezed-vacuum photon number = sinh^2(r), r in [0,3]", worst);

  // Single-sideband photon number is twice the two-sideband average when the
  // mirror sideband is vacuum: V - 1 = 2 (2V - 2) / 4.
  worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto blk = rng_block(kSelftestSeed, 2000 + static_cast<std::uint64_t>(i), 0,
                               RngDomain::selftest);
    const double v = 1e6 * uniform53(blk[0], blk[1]);
    const double lhs = single_sideband_photon_number(v);
    const double rhs = 2.0 * mean_photon_from_variances({v, v});
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  rep.check(worst <= 1e-12, "single-sideband vs sideband-average consistency", worst);

  // Gain anchors: r(1) = 0 exactly, r(2) = ln(1 + sqrt(2)).
  const double r1 = squeeze_factor_from_gain(1.0);
  rep.check(r1 == 0.0, "squeeze factor r(G=1) = 0 exactly", std::abs(r1));
  const double r2 = squeeze_factor_from_gain(2.0);
  rep.check(close_rel(r2, std::log(1.0 + std::sqrt(2.0)), 1e-14),
            "squeeze factor r(G=2) = ln(1+sqrt(2))", std::abs(r2 - std::log(1.0 + std::sqrt(2.0))));

  return rep.all_ok;
}

}  // namespace sbflux
