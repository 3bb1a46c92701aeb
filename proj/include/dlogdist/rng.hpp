#pragma once

#include "dlogdist/common.hpp"

namespace dlogdist {

// splitmix64; used everywhere we need reproducible pseudo-randomness.
struct SplitMix64 {
  u64 state;

  explicit SplitMix64(u64 seed) : state(seed) {}

  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n) by rejection on the top of the range.
  u64 below(u64 n) {
    u64 threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      u64 r = next();
      if (r >= threshold) return r % n;
    }
  }

  double unit() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

// Independent stream for (seed, counter); lets tuple sampling partition by
// counter ranges without sharing state.
inline SplitMix64 keyed_stream(u64 seed, u64 counter) {
  SplitMix64 mixer(seed ^ (counter * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
  mixer.next();
  return mixer;
}

}  // namespace dlogdist
