#pragma once

#include <cmath>
#include <cstdint>

#include "bergman/common.hpp"

namespace bergman {

// Small self-contained PRNG (splitmix64). Used instead of <random> engines so
// that streams, and therefore every Monte Carlo Estimate, are reproducible
// bit-for-bit across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0,1); never returns an exact endpoint.
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return u;
  }

  // Standard complex Gaussian (Box-Muller), E|g|^2 = 2.
  Complex gaussian() {
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double t = kTwoPi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Derives an independent sub-stream seed; used to hand each stratum or
  // worker its own stream while keeping the merge order fixed.
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0x94d049bb133111ebULL * (index + 1)));
    return mix.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace bergman
