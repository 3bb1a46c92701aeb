#include <doctest.h>

#include "dlogdist/dlog.hpp"
#include "dlogdist/rng.hpp"

using namespace dlogdist;

TEST_CASE("table for p=7, g=3 matches the enumerated powers") {
  auto table = build_table(build_ctx(7, 3));
  CHECK(table.log(1) == 0);
  CHECK(table.log(3) == 1);
  CHECK(table.log(2) == 2);
  CHECK(table.log(6) == 3);
  CHECK(table.log(4) == 4);
  CHECK(table.log(5) == 5);
  CHECK_THROWS_AS(table.log(0), PreconditionError);
}

TEST_CASE("table is a bijection onto [0, p-2]") {
  auto table = build_table(build_ctx(1009));
  std::vector<bool> seen(1008, false);
  for (u64 x = 1; x < 1009; ++x) {
    u64 n = table.log(x);
    REQUIRE(n < 1008);
    REQUIRE_FALSE(seen[n]);
    seen[n] = true;
    REQUIRE(mod_pow(table.ctx.g, n, 1009) == x);
  }
}

TEST_CASE("bsgs hand cases") {
  FieldCtx ctx = build_ctx(7, 3);
  CHECK(dlog_bsgs(ctx, 5) == 5);
  CHECK(dlog_bsgs(ctx, 1) == 0);
  CHECK(dlog_bsgs(ctx, 3) == 1);
  CHECK_THROWS_AS(dlog_bsgs(ctx, 7), PreconditionError);
}

TEST_CASE("pollard rho hand cases") {
  FieldCtx ctx7 = build_ctx(7, 3);
  CHECK(dlog_pollard_rho(ctx7, 4, 1) == 4);
  CHECK(dlog_pollard_rho(ctx7, 4, 99) == 4);
  FieldCtx ctx11 = build_ctx(11, 2);
  CHECK(dlog_pollard_rho(ctx11, 1, 5) == 0);
}

TEST_CASE("solvers agree and satisfy the round trip at p=10007") {
  FieldCtx ctx = build_ctx(10007);
  auto table = build_table(ctx);
  SplitMix64 rng(42);
  for (int i = 0; i < 200; ++i) {
    u64 x = 1 + rng.below(ctx.p - 1);
    u64 from_table = table.log(x);
    u64 from_bsgs = dlog_bsgs(ctx, x);
    u64 from_rho = dlog_pollard_rho(ctx, x, rng.next());
    CHECK(from_table == from_bsgs);
    CHECK(from_table == from_rho);
    CHECK(mod_pow(ctx.g, from_table, ctx.p) == x);
  }
}

TEST_CASE("log is a homomorphism mod p-1") {
  FieldCtx ctx = build_ctx(10007);
  auto table = build_table(ctx);
  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    u64 x = 1 + rng.below(ctx.p - 1);
    u64 y = 1 + rng.below(ctx.p - 1);
    u64 lhs = table.log(mul_mod(x, y, ctx.p));
    u64 rhs = (table.log(x) + table.log(y)) % (ctx.p - 1);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("table cap is enforced") {
  FieldCtx ctx = build_ctx(4294967311ull);  // prime above 2^32
  CHECK_THROWS_AS(build_table(ctx), PreconditionError);
}
