#ifndef QOU_RNG_HPP
#define QOU_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qou/common.hpp"

namespace qou {

// splitmix64; used both as a generator and to derive independent
// per-sample streams from (seed, index) so parallel suites stay
// deterministic under any thread count.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  static Rng derive(uint64_t seed, uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    r.next();
    r.next();
    return r;
  }

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  uint64_t uniform_int(uint64_t n) { return next() % n; }

  // Box-Muller, so results do not depend on the standard library's
  // normal_distribution implementation.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  cxd cnormal() { return cxd(normal(), normal()); }
};

}  // namespace qou

#endif
