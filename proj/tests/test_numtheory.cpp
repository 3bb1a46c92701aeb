#include <doctest.h>

#include <vector>

#include "dlogdist/numtheory.hpp"
#include "dlogdist/rng.hpp"

using namespace dlogdist;

TEST_CASE("is_prime on the documented cases") {
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(2));
  CHECK(is_prime(10007));  // trial division up to sqrt confirms
  CHECK_FALSE(is_prime(10006));
  CHECK(is_prime(1000003));
  CHECK(is_prime(u64{1000003} * 1 + 0));
  CHECK_FALSE(is_prime(u64{1000003} * 1000033));
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
}

TEST_CASE("is_prime agrees with a sieve up to 10^6") {
  constexpr u64 kLimit = 1'000'000;
  std::vector<bool> composite(kLimit + 1, false);
  for (u64 i = 2; i * i <= kLimit; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= kLimit; j += i) composite[j] = true;
  }
  for (u64 n = 0; n <= kLimit; ++n) {
    bool expected = n >= 2 && !composite[n];
    if (is_prime(n) != expected) {
      CAPTURE(n);
      REQUIRE(is_prime(n) == expected);
    }
  }
  CHECK(true);
}

TEST_CASE("factorize hand cases") {
  CHECK(factorize(12) == std::vector<std::pair<u64, int>>{{2, 2}, {3, 1}});
  CHECK(factorize(6) == std::vector<std::pair<u64, int>>{{2, 1}, {3, 1}});
  CHECK(factorize(10006) == std::vector<std::pair<u64, int>>{{2, 1}, {5003, 1}});
  CHECK(factorize(2) == std::vector<std::pair<u64, int>>{{2, 1}});
  CHECK_THROWS_AS(factorize(1), PreconditionError);
  CHECK_THROWS_AS(factorize(0), PreconditionError);
}

TEST_CASE("factorize round-trips on random inputs up to 10^7") {
  SplitMix64 rng(20260810);
  for (int trial = 0; trial < 20000; ++trial) {
    u64 n = 2 + rng.below(10'000'000 - 1);
    u64 product = 1;
    u64 prev = 0;
    for (const auto& [q, mult] : factorize(n)) {
      CHECK(q > prev);  // nondecreasing primes, distinct entries
      CHECK(is_prime(q));
      prev = q;
      for (int i = 0; i < mult; ++i) product *= q;
    }
    REQUIRE(product == n);
  }
}

TEST_CASE("factorize reaches the rho path on 64-bit semiprimes") {
  u64 n = 1000003ull * 1000033ull;
  CHECK(factorize(n) == std::vector<std::pair<u64, int>>{{1000003, 1}, {1000033, 1}});
  u64 sq = 2147483647ull;  // 2^31 - 1, prime
  CHECK(factorize(sq * sq) == std::vector<std::pair<u64, int>>{{sq, 2}});
}

TEST_CASE("mod_pow hand cases") {
  CHECK(mod_pow(3, 5, 7) == 5);
  CHECK(mod_pow(3, 6, 7) == 1);
  CHECK(mod_pow(5, 0, 10007) == 1);
  CHECK_THROWS_AS(mod_pow(2, 3, 1), PreconditionError);
  // wide products must not overflow
  u64 big = (u64{1} << 62) - 57;
  CHECK(mod_pow(big - 1, 2, big) == mul_mod(big - 1, big - 1, big));
}

TEST_CASE("smallest primitive roots") {
  CHECK(smallest_primitive_root(7) == 3);
  CHECK(smallest_primitive_root(11) == 2);
  CHECK(smallest_primitive_root(101) == 2);
  CHECK(smallest_primitive_root(1009) == 11);
  CHECK(smallest_primitive_root(10007) == 5);
  CHECK(smallest_primitive_root(1000003) == 2);
  CHECK_THROWS_AS(smallest_primitive_root(10), NotPrimeError);
}

TEST_CASE("build_ctx validates and selects") {
  FieldCtx ctx = build_ctx(7);
  CHECK(ctx.g == 3);
  CHECK(ctx.factors_of_p_minus_1 ==
        std::vector<std::pair<u64, int>>{{2, 1}, {3, 1}});

  FieldCtx with_g = build_ctx(7, 5);
  CHECK(with_g.g == 5);

  CHECK_THROWS_AS(build_ctx(7, 2), NonGeneratorError);
  CHECK_THROWS_AS(build_ctx(10006), NotPrimeError);
  CHECK_THROWS_AS(build_ctx(u64{1} << 62), PreconditionError);
}

TEST_CASE("ctx generator passes the q-power test") {
  for (u64 p : {7ull, 11ull, 101ull, 1009ull, 10007ull}) {
    FieldCtx ctx = build_ctx(p);
    CHECK(mod_pow(ctx.g, p - 1, p) == 1);
    for (const auto& [q, mult] : ctx.factors_of_p_minus_1) {
      (void)mult;
      CHECK(mod_pow(ctx.g, (p - 1) / q, p) != 1);
    }
    u64 product = 1;
    for (const auto& [q, mult] : ctx.factors_of_p_minus_1) {
      for (int i = 0; i < mult; ++i) product *= q;
    }
    CHECK(product == p - 1);
  }
}
