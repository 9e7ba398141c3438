#pragma once

#include "belt/types.hpp"

#include <cmath>
#include <cstdint>

namespace belt {

// splitmix64 stream; explicit 64-bit seeds, no global state, so every
// sampling path replays bit-exactly for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Cplx gaussian_cplx() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  // Independent child stream for task `index`; the parent state is untouched,
  // so a parallel reduction over derived streams matches the sequential one.
  Rng derive(std::uint64_t index) const {
    Rng probe(state_ ^ (0xd1b54a32d192ed03ull * (index + 1)));
    return Rng(probe.next_u64());
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace belt
