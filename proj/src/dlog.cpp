#include "dlogdist/dlog.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "dlogdist/rng.hpp"

namespace dlogdist {

DlogTable build_table(const FieldCtx& ctx) {
  if (ctx.p > DlogTable::kMaxTableP) {
    throw PreconditionError("build_table: p exceeds the materialization cap");
  }
  DlogTable t;
  t.ctx = ctx;
  t.log_of.assign(ctx.p, 0);
  u64 x = 1;
  for (u64 n = 0; n + 1 < ctx.p; ++n) {
    t.log_of[x] = static_cast<u32>(n);
    x = mul_mod(x, ctx.g, ctx.p);
  }
  return t;
}

namespace {

u64 check_dlog_arg(const FieldCtx& ctx, u64 x) {
  u64 v = x % ctx.p;
  if (v == 0) throw PreconditionError("discrete log of 0 mod p is undefined");
  return v;
}

}  // namespace

u64 dlog_bsgs(const FieldCtx& ctx, u64 x) {
  u64 v = check_dlog_arg(ctx, x);
  u64 order = ctx.p - 1;
  u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  if (m == 0) m = 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 pw = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(pw, j);  // first occurrence wins; powers are distinct anyway
    pw = mul_mod(pw, ctx.g, ctx.p);
  }
  u64 giant_factor = mod_pow(mod_pow(ctx.g, m, ctx.p), ctx.p - 2, ctx.p);  // g^-m
  u64 gamma = v;
  for (u64 i = 0; i <= order / m; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) {
      u64 n = (i * m + it->second) % order;
      return n;
    }
    gamma = mul_mod(gamma, giant_factor, ctx.p);
  }
  throw Error("dlog_bsgs: no solution found (g is not a generator?)");
}

namespace {

struct RhoState {
  u64 y, a, b;  // y = g^a * x^b
};

void rho_step(RhoState& s, const FieldCtx& ctx, u64 x, u64 order) {
  switch (s.y % 3) {
    case 0:
      s.y = mul_mod(s.y, s.y, ctx.p);
      s.a = (s.a * 2) % order;
      s.b = (s.b * 2) % order;
      break;
    case 1:
      s.y = mul_mod(s.y, ctx.g, ctx.p);
      s.a = (s.a + 1) % order;
      break;
    default:
      s.y = mul_mod(s.y, x, ctx.p);
      s.b = (s.b + 1) % order;
      break;
  }
}

}  // namespace

u64 dlog_pollard_rho(const FieldCtx& ctx, u64 x, u64 seed) {
  u64 v = check_dlog_arg(ctx, x);
  if (v == 1) return 0;
  u64 order = ctx.p - 1;
  constexpr int kMaxRestarts = 256;
  constexpr u64 kMaxCosets = 1u << 16;  // candidate classes tested per collision
  SplitMix64 rng(seed ^ 0x9d2c5680u);
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    u64 a0 = rng.below(order);
    u64 b0 = rng.below(order);
    RhoState slow{mul_mod(mod_pow(ctx.g, a0, ctx.p), mod_pow(v, b0, ctx.p), ctx.p),
                  a0, b0};
    RhoState fast = slow;
    u64 budget = 8 * (static_cast<u64>(std::sqrt(static_cast<double>(order))) + 64);
    bool collided = false;
    for (u64 it = 0; it < budget + order; ++it) {
      rho_step(slow, ctx, v, order);
      rho_step(fast, ctx, v, order);
      rho_step(fast, ctx, v, order);
      if (slow.y == fast.y) {
        collided = true;
        break;
      }
    }
    if (!collided) continue;
    // g^(a_s) x^(b_s) = g^(a_f) x^(b_f)  =>  n*(b_s - b_f) = a_f - a_s (mod order)
    u64 bd = (slow.b + order - fast.b) % order;
    u64 ad = (fast.a + order - slow.a) % order;
    if (bd == 0) continue;  // degenerate collision, no information
    u64 d = std::gcd(bd, order);
    if (ad % d != 0) continue;
    if (d > kMaxCosets) continue;  // cheaper to restart than to scan cosets
    u64 reduced_order = order / d;
    // modular inverse of bd/d in Z_reduced_order via extended Euclid
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(reduced_order), nr = static_cast<i64>((bd / d) % reduced_order);
    while (nr != 0) {
      i64 q = r / nr;
      i64 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (r != 1) continue;  // bd/d not invertible (cannot happen after gcd split)
    u64 inv_bd = static_cast<u64>(t < 0 ? t + static_cast<i64>(reduced_order) : t);
    u64 n0 = mul_mod((ad / d) % reduced_order, inv_bd, reduced_order);
    for (u64 c = 0; c < d; ++c) {
      u64 cand = n0 + c * reduced_order;
      if (mod_pow(ctx.g, cand, ctx.p) == v) return cand % order;
    }
  }
  throw RetryExhaustedError("dlog_pollard_rho: retry budget exhausted");
}

}  // namespace dlogdist
