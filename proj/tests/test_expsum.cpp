#include <doctest.h>

#include <cmath>
#include <complex>

#include "dlogdist/expsum.hpp"
#include "dlogdist/rng.hpp"
#include "dlogdist/sampling.hpp"

using namespace dlogdist;

TEST_CASE("resolvent edge values") {
  for (u64 p : {7ull, 11ull, 101ull}) {
    FieldCtx ctx = build_ctx(p);
    ResolventValue trivial = resolvent(ctx, 0, 0);
    CHECK(trivial.value.real() == static_cast<double>(p - 1));
    CHECK(trivial.value.imag() == 0.0);
    CHECK(trivial.terms == p - 1);

    for (u64 k = 1; k < p - 1; ++k) {
      ResolventValue s = resolvent(ctx, k, 0);
      REQUIRE(std::abs(s.value) <= s.err_bound);
    }
    for (u64 u = 1; u < p; ++u) {
      ResolventValue s = resolvent(ctx, 0, u);
      REQUIRE(std::abs(s.value + 1.0) <= s.err_bound);
    }
  }
}

TEST_CASE("gauss modulus at p=7") {
  FieldCtx ctx = build_ctx(7, 3);
  ResolventValue s = resolvent(ctx, 1, 1);
  CHECK(std::abs(std::norm(s.value) - 7.0) <= 1e-9);
  CHECK(resolvent_modulus_sq_error(ctx, 1, 1) <= 1e-9);
  CHECK_THROWS_AS(resolvent_modulus_sq_error(ctx, 0, 1), PreconditionError);
  CHECK_THROWS_AS(resolvent_modulus_sq_error(ctx, 6, 1), PreconditionError);
  CHECK_THROWS_AS(resolvent_modulus_sq_error(ctx, 1, 7), PreconditionError);
}

TEST_CASE("gauss modulus exhaustive at p=101") {
  FieldCtx ctx = build_ctx(101);
  double worst = 0.0;
  for (u64 u = 1; u < 101; ++u) {
    auto row = resolvents_for_all_k(ctx, u);
    for (u64 k = 1; k < 100; ++k) {
      worst = std::max(worst, std::abs(std::norm(row[k]) - 101.0));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("bulk rows and columns match single-call resolvents bit for bit") {
  for (u64 p : {7ull, 101ull}) {
    FieldCtx ctx = build_ctx(p);
    for (u64 u : {0ull, 1ull, p / 2}) {
      auto row = resolvents_for_all_k(ctx, u);
      for (u64 k = 0; k < p - 1; ++k) {
        ResolventValue single = resolvent(ctx, k, u);
        REQUIRE(row[k] == single.value);
      }
    }
    for (u64 k : {0ull, 1ull, (p - 1) / 2}) {
      auto col = resolvents_for_all_u(ctx, k);
      for (u64 u = 0; u < p; ++u) {
        ResolventValue single = resolvent(ctx, k, u);
        REQUIRE(col[u] == single.value);
      }
    }
  }
}

TEST_CASE("bulk sweeps are invariant under the job count") {
  FieldCtx ctx = build_ctx(101);
  auto row1 = resolvents_for_all_k(ctx, 3, 1);
  auto row4 = resolvents_for_all_k(ctx, 3, 4);
  REQUIRE(row1 == row4);
}

TEST_CASE("phase sum values and bound") {
  SUBCASE("u = 0 gives N") {
    PhaseSum s = progression_phase_sum(101, Progression{0, 1, 50}, 0);
    CHECK(s.value.real() == doctest::Approx(50.0));
    CHECK(std::abs(s.value.imag()) <= 1e-12);
    CHECK(s.bound == 50.0);
  }
  SUBCASE("full period sums to -1") {
    PhaseSum s = progression_phase_sum(7, Progression{0, 1, 6}, 1);
    CHECK(std::abs(s.value - std::complex<double>(-1.0, 0.0)) <= 1e-12);
  }
  SUBCASE("closed form matches direct summation") {
    SplitMix64 rng(3);
    for (u64 p : {7ull, 101ull, 1009ull}) {
      for (int trial = 0; trial < 5; ++trial) {
        Progression j = random_progression(rng, p);
        u64 u = rng.below(p);
        PhaseSum s = progression_phase_sum(p, j, u);
        std::complex<double> direct;
        for (u64 i = 1; i <= j.n; ++i) {
          direct += unit_root(p - mul_mod(u, j.value(i) % p, p), p);
        }
        REQUIRE(std::abs(s.value - direct) <= 1e-9 * (1.0 + std::abs(direct)));
      }
    }
  }
  SUBCASE("sharp bound holds for every u at small primes") {
    SplitMix64 rng(17);
    for (u64 p : {7ull, 101ull}) {
      for (int trial = 0; trial < 10; ++trial) {
        Progression j = random_progression(rng, p);
        for (u64 u = 0; u <= p; ++u) {
          PhaseSum s = progression_phase_sum(p, j, u);
          REQUIRE(std::abs(s.value) <= s.bound);
        }
      }
    }
  }
}

TEST_CASE("log character sum basics") {
  auto table = build_table(build_ctx(7, 3));
  Progression full{0, 1, 6};

  std::complex<double> k0 = log_character_sum(table, full, 0);
  CHECK(k0.real() == 6.0);
  CHECK(k0.imag() == 0.0);

  for (u64 k = 1; k < 6; ++k) {
    // logs of the full progression cover every residue mod 6
    CHECK(std::abs(log_character_sum(table, full, k)) <= 1e-12);
  }
}

TEST_CASE("inversion identity residuals") {
  auto table7 = build_table(build_ctx(7, 3));
  CHECK(verify_inversion(table7, 1, 5) <= 1e-9);
  CHECK(verify_inversion(table7, 0, 4) <= 1e-9);  // forced by u-sum orthogonality

  auto table101 = build_table(build_ctx(101));
  SplitMix64 rng(23);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    u64 k = rng.below(100);
    u64 z = 1 + rng.below(100);
    worst = std::max(worst, verify_inversion(table101, k, z));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("decomposition identity residuals") {
  auto table7 = build_table(build_ctx(7, 3));
  Progression full{0, 1, 6};
  CHECK(verify_decomposition(table7, full, 1) <= 1e-9);
  CHECK(verify_decomposition(table7, full, 0) <= 1e-9);

  auto table = build_table(build_ctx(1009));
  SplitMix64 rng(29);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    Progression j = random_progression(rng, 1009);
    u64 k = rng.below(1008);
    worst = std::max(worst, verify_decomposition(table, j, k));
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("pv bound ratio stays below one") {
  auto table = build_table(build_ctx(1009));
  Progression half{0, 1, 504};
  std::vector<u64> ks;
  for (u64 k = 1; k < 1008; ++k) ks.push_back(k);
  PvReport rep = pv_bound_check(table, half, ks);
  CHECK(rep.max_ratio <= 1.0);
  CHECK(rep.bound == doctest::Approx(std::sqrt(1009.0) * (2.0 + std::log(1009.0))));

  std::vector<u64> zero{1008};  // k = 0 mod p-1 is excluded from the bound
  CHECK_THROWS_AS(pv_bound_check(table, half, zero), PreconditionError);
}

TEST_CASE("unit root table matches streamed roots") {
  UnitRoots roots(360);
  for (u64 x = 0; x < 360; ++x) {
    REQUIRE(roots(x) == unit_root(x, 360));
  }
  CHECK_THROWS_AS(UnitRoots(0), PreconditionError);
  CHECK_THROWS_AS(UnitRoots(UnitRoots::kMaxModulus + 1), PreconditionError);
}
