#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace swayalign {

/// Counter-based pseudo-random source: every draw is a pure function of
/// (seed, counter), so any sample of any run can be regenerated in isolation
/// and results do not depend on evaluation order or thread assignment.
/// The generator is the splitmix64 output function applied to a
/// golden-ratio-strided counter; its 64-bit avalanche quality is well
/// established and more than sufficient for Monte-Carlo noise synthesis.
struct Prng {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(seed + counter * 0x9E3779B97F4A7C15ull);
  }

  /// Uniform draw in the open interval (0, 1).
  double uniform01(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal draw at the given counter (Box-Muller; internally
  /// consumes uniform counters 2c and 2c+1).
  double gaussian(std::uint64_t counter) const {
    const double u1 = uniform01(2 * counter);
    const double u2 = uniform01(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Statistically independent child stream (e.g. one per Monte-Carlo run).
  Prng substream(std::uint64_t id) const { return Prng{mix(seed ^ mix(id))}; }
};

}  // namespace swayalign
