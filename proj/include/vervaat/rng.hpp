// Seedable, splittable random streams for reproducible Monte Carlo.
//
// Replicate streams are pure functions of (user seed, stream index), so
// results do not depend on execution order or degree of parallelism.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vervaat {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream seed = mix64(mix64(seed + gamma*(index+1))).  Documented in every
// experiment report; identical on all platforms.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
  return mix64(mix64(seed + gamma * (index + 1)));
}

inline constexpr const char* kSeedRule =
    "stream(seed,i) = mix64(mix64(seed + 0x9E3779B97F4A7C15*(i+1)))";

// mt19937_64 with explicit transforms.  The standard pins the engine's
// output sequence; std::*_distribution is implementation-defined, so the
// uniform/normal/exponential maps are spelled out here instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : engine_(mix64(seed ^ 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; always consumes two uniforms, no spare
  // is cached, so the draw count per call is fixed.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  double exponential(double rate) {
    double u = uniform01();
    while (u <= 0.0) u = uniform01();
    return -std::log(u) / rate;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vervaat
