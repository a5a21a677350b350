#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace sbflux {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC 2011).
//
// The generator is a keyed bijection on a 128-bit counter: every
// (key, counter) pair yields four 32-bit words, independent of evaluation
// order. All stochastic kernels in this library address their draws by
// (seed, item index, stream, domain), so a record is bit-identical no
// matter how the work is chunked across threads.
struct Philox4x32 {
  static constexpr std::uint32_t kMult0 = 0xD2511F53u;
  static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  static constexpr int kRounds = 10;

  static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                            std::array<std::uint32_t, 4> ctr) noexcept {
    auto k0 = static_cast<std::uint32_t>(key);
    auto k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < kRounds; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
             static_cast<std::uint32_t>(p0)};
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return ctr;
  }
};

// Domain tags keep logically distinct draw streams (bright vs dark records,
// primary clicks vs afterpulse decisions) disjoint under one seed.
enum class RngDomain : std::uint32_t {
  homodyne_bright = 1,
  homodyne_dark = 2,
  spdm_primary = 3,
  spdm_afterpulse = 4,
  selftest = 5,
};

// Counter layout: {index lo32, index hi32, stream, domain}.
inline std::array<std::uint32_t, 4> rng_block(std::uint64_t seed, std::uint64_t index,
                                              std::uint32_t stream, RngDomain domain) noexcept {
  return Philox4x32::block(seed, {static_cast<std::uint32_t>(index),
                                  static_cast<std::uint32_t>(index >> 32), stream,
                                  static_cast<std::uint32_t>(domain)});
}

/// Uniform in [0, 1) with 32-bit granularity.
inline double uniform32(std::uint32_t w) noexcept { return w * 0x1.0p-32; }

/// Uniform in [0, 1) with 53-bit granularity from two words.
inline double uniform53(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// One standard-normal pair per counter via Box-Muller; u1 is mapped into
// (0, 1] so the log never sees zero.
inline std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t index,
                                             std::uint32_t stream, RngDomain domain) noexcept {
  const auto b = rng_block(seed, index, stream, domain);
  const double u1 = 1.0 - uniform53(b[0], b[1]);
  const double u2 = uniform53(b[2], b[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 6.283185307179586476925286766559 * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// splitmix64 finalizer; derives per-row seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace sbflux
