// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_RNG_HPP
#define SWLAB_RNG_HPP

// Counter-based deterministic random stream (splitmix64).  Reproducible
// across platforms and independent of call interleaving given the seed.

#include <cmath>
#include <complex>
#include <cstdint>

namespace swlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal (Box-Muller)
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::complex<double> cnormal() { return {normal(), normal()}; }

  // derive an independent stream for a labelled sub-task
  static Rng derive(std::uint64_t seed, std::uint64_t label) {
    Rng mix(seed ^ (0x517cc1b727220a95ULL * (label + 1)));
    mix.next_u64();
    return mix;
  }

 private:
  std::uint64_t state_;
};

}  // namespace swlab

#endif  // SWLAB_RNG_HPP
