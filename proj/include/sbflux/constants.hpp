#pragma once

namespace sbflux {

// SI exact values (2019 redefinition).
struct PhysicalConstants {
  static constexpr double planck = 6.62607015e-34;       // J s
  static constexpr double speed_of_light = 299792458.0;  // m / s
};

}  // namespace sbflux
