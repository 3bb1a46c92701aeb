#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dlogdist/common.hpp"

namespace dlogdist {

// (a * b) mod m without overflow; m may be up to 2^63.
inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

// base^exponent mod modulus, exact. Rejects modulus < 2.
u64 mod_pow(u64 base, u64 exponent, u64 modulus);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

// Nondecreasing (prime, multiplicity) pairs whose product is n. Rejects n < 2.
// Trial division up to 10^6, Pollard-Brent for the remaining cofactor.
std::vector<std::pair<u64, int>> factorize(u64 n);

// True iff g generates the multiplicative group mod p; factors are those of p-1.
bool is_primitive_root(u64 g, u64 p,
                       const std::vector<std::pair<u64, int>>& factors);

// Smallest g >= 2 with g^((p-1)/q) != 1 mod p for all prime q | p-1.
u64 smallest_primitive_root(u64 p);

// The prime p, a chosen primitive root g, and the factored group order.
// Immutable after construction and safe to share across workers.
struct FieldCtx {
  u64 p = 0;
  u64 g = 0;
  std::vector<std::pair<u64, int>> factors_of_p_minus_1;

  // p is capped so double-width modular products stay exact.
  static constexpr u64 kMaxPrime = u64{1} << 62;
};

// Validates p (odd prime, under the cap) and g (generator); picks the
// smallest primitive root when g is omitted.
FieldCtx build_ctx(u64 p, std::optional<u64> g = std::nullopt);

}  // namespace dlogdist
