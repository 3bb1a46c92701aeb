#pragma once

#include <algorithm>

#include "dlogdist/rng.hpp"
#include "dlogdist/torus.hpp"

namespace dlogdist {

// Experiment plumbing shared by the CLI sweeps and the test harnesses.

inline Interval random_interval(SplitMix64& rng, i64 grid = 10'000) {
  i64 a = static_cast<i64>(rng.below(static_cast<u64>(grid) + 1));
  i64 b = static_cast<i64>(rng.below(static_cast<u64>(grid) + 1));
  if (a > b) std::swap(a, b);
  return Interval(Rational(a, grid), Rational(b, grid));
}

inline Progression random_progression(SplitMix64& rng, u64 p) {
  u64 max_step = std::min<u64>(p - 2, 1000);
  u64 r = 1 + rng.below(max_step);
  u64 a = rng.below(p - r);  // a + r <= p - 1
  u64 max_n = (p - 1 - a) / r;
  u64 n = 1 + rng.below(max_n);
  return Progression{a, r, n};
}

}  // namespace dlogdist
