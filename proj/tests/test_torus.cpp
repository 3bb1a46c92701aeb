#include <doctest.h>

#include <algorithm>

#include "dlogdist/rng.hpp"
#include "dlogdist/sampling.hpp"
#include "dlogdist/torus.hpp"

using namespace dlogdist;

namespace {

TorusPoints random_points(SplitMix64& rng, bool allow_duplicates) {
  u64 den = 2 + rng.below(100'000);
  u64 n = 1 + rng.below(200);
  if (!allow_duplicates && n > den) n = den;
  std::vector<u64> nums;
  if (allow_duplicates) {
    for (u64 i = 0; i < n; ++i) nums.push_back(rng.below(den));
  } else {
    while (nums.size() < n) {
      u64 v = rng.below(den);
      if (std::find(nums.begin(), nums.end(), v) == nums.end()) nums.push_back(v);
    }
  }
  return make_torus_points(den, std::move(nums));
}

}  // namespace

TEST_CASE("rational parsing and ordering") {
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("3/8") == Rational(3, 8));
  CHECK(Rational::parse("1") == Rational(1, 1));
  CHECK(Rational::parse("0.5") < Rational::parse("2/3"));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), PreconditionError);
}

TEST_CASE("log_image hand cases at p=7") {
  auto table = build_table(build_ctx(7, 3));

  TorusPoints full = log_image(table, Progression{0, 1, 6});
  CHECK(full.denominator == 6);
  CHECK(full.numerators == std::vector<u64>{0, 1, 2, 3, 4, 5});

  TorusPoints single = log_image(table, Progression{2, 1, 1});  // J = {3}
  CHECK(single.numerators == std::vector<u64>{1});

  TorusPoints evens = log_image(table, Progression{0, 2, 3});  // J = {2,4,6}
  CHECK(evens.numerators == std::vector<u64>{2, 3, 4});
}

TEST_CASE("progression validation") {
  CHECK_THROWS_AS(validate_progression(Progression{0, 1, 7}, 7), PreconditionError);
  CHECK_THROWS_AS(validate_progression(Progression{0, 0, 1}, 7), PreconditionError);
  CHECK_THROWS_AS(validate_progression(Progression{0, 1, 0}, 7), PreconditionError);
  CHECK_NOTHROW(validate_progression(Progression{0, 1, 6}, 7));
  CHECK_NOTHROW(validate_progression(Progression{0, 2, 3}, 7));
}

TEST_CASE("interval discrepancy hand cases") {
  TorusPoints m = make_torus_points(12, {3, 6, 9});  // {1/4, 1/2, 3/4}

  double d = interval_discrepancy(m, Interval(Rational(0, 1), Rational(1, 2)));
  CHECK(d == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(interval_discrepancy(m, Interval(Rational(0, 1), Rational(1, 1))) == 0.0);

  TorusPoints one = make_torus_points(2, {1});
  double deg = interval_discrepancy(one, Interval(Rational(1, 2), Rational(1, 2)));
  CHECK(deg == 1.0);
}

TEST_CASE("half-open counting drops the right endpoint") {
  TorusPoints m = make_torus_points(4, {0, 1, 2});
  Interval iv(Rational(0, 1), Rational(1, 2));
  CHECK(count_points(m, iv, IntervalMode::kClosed) == 3);
  CHECK(count_points(m, iv, IntervalMode::kHalfOpen) == 2);
}

TEST_CASE("full interval has zero discrepancy for any point set") {
  SplitMix64 rng(11);
  Interval full(Rational(0, 1), Rational(1, 1));
  for (int i = 0; i < 50; ++i) {
    TorusPoints m = random_points(rng, i % 2 == 0);
    CHECK(interval_discrepancy(m, full) == 0.0);
  }
}

TEST_CASE("extreme discrepancy of the midpoint grid is 1/N") {
  for (u64 n : {1ull, 2ull, 4ull, 8ull, 16ull}) {
    std::vector<u64> nums;
    for (u64 i = 0; i < n; ++i) nums.push_back(2 * i + 1);
    TorusPoints m = make_torus_points(2 * n, std::move(nums));
    ExtremeReport fast = extreme_discrepancy(m);
    ExtremeReport ref = brute_force_extreme_discrepancy(m);
    CHECK(fast.raw_num == ref.raw_num);
    CHECK(fast.normalized == 1.0 / static_cast<double>(n));
  }
}

TEST_CASE("extreme discrepancy hand cases") {
  TorusPoints single = make_torus_points(2, {1});  // {0.5}
  CHECK(extreme_discrepancy(single).normalized == 1.0);
  CHECK(brute_force_extreme_discrepancy(single).normalized == 1.0);

  TorusPoints pair = make_torus_points(2, {0, 1});  // {0, 0.5}
  CHECK(extreme_discrepancy(pair).normalized == 0.5);
  CHECK(brute_force_extreme_discrepancy(pair).normalized == 0.5);

  CHECK_THROWS_AS(extreme_discrepancy(make_torus_points(5, {})), PreconditionError);
}

TEST_CASE("extreme discrepancy of the full log image at p=7") {
  auto table = build_table(build_ctx(7, 3));
  TorusPoints m = log_image(table, Progression{0, 1, 6});
  ExtremeReport fast = extreme_discrepancy(m);
  ExtremeReport ref = brute_force_extreme_discrepancy(m);
  CHECK(fast.raw_num == ref.raw_num);
  CHECK(fast.raw == 1.0);  // permutation image: one point per cell
}

TEST_CASE("fast extreme equals the quadratic oracle on random point sets") {
  SplitMix64 rng(20260810);
  for (int trial = 0; trial < 100; ++trial) {
    TorusPoints m = random_points(rng, trial % 3 == 0);
    ExtremeReport fast = extreme_discrepancy(m);
    ExtremeReport ref = brute_force_extreme_discrepancy(m);
    CAPTURE(trial);
    REQUIRE(fast.denominator == ref.denominator);
    REQUIRE(fast.raw_num == ref.raw_num);
    REQUIRE(fast.raw == ref.raw);
    REQUIRE(fast.normalized == ref.normalized);
  }
}

TEST_CASE("interval discrepancy never exceeds the extreme supremum") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    TorusPoints m = random_points(rng, false);
    double sup = extreme_discrepancy(m).raw;
    for (int i = 0; i < 20; ++i) {
      Interval iv = random_interval(rng);
      CHECK(std::abs(interval_discrepancy(m, iv)) <= sup + 1e-9);
    }
  }
}

TEST_CASE("oracle guard rejects oversized sets") {
  std::vector<u64> nums(5001);
  for (u64 i = 0; i < 5001; ++i) nums[i] = i;
  TorusPoints m = make_torus_points(10000, std::move(nums));
  CHECK_THROWS_AS(brute_force_extreme_discrepancy(m), PreconditionError);
  CHECK_NOTHROW(extreme_discrepancy(m));
}
