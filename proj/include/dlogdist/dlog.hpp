#pragma once

#include <vector>

#include "dlogdist/numtheory.hpp"

namespace dlogdist {

// Full logarithm table: log_of[x] is the unique n in [0, p-2] with
// g^n = x mod p. Immutable after build; bulk lookups may run in parallel.
struct DlogTable {
  FieldCtx ctx;
  std::vector<u32> log_of;  // size p; slot 0 unused

  static constexpr u64 kMaxTableP = 100'000'000;

  u64 log(u64 x) const {
    if (x == 0 || x >= ctx.p) throw PreconditionError("dlog of value outside [1, p-1]");
    return log_of[x];
  }
};

// One pass x <- g*x over the whole group. Rejects p over the cap.
DlogTable build_table(const FieldCtx& ctx);

// Baby-step giant-step; block size ceil(sqrt(p-1)).
u64 dlog_bsgs(const FieldCtx& ctx, u64 x);

// Pollard rho with the 3-way partition and Floyd cycle detection.
// Randomized internally, deterministic for a fixed seed.
u64 dlog_pollard_rho(const FieldCtx& ctx, u64 x, u64 seed);

}  // namespace dlogdist
