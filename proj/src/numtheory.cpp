#include "dlogdist/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "dlogdist/rng.hpp"

namespace dlogdist {

u64 mod_pow(u64 base, u64 exponent, u64 modulus) {
  if (modulus < 2) throw PreconditionError("mod_pow requires modulus >= 2");
  u64 result = 1;
  u64 b = base % modulus;
  u64 e = exponent;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, b, modulus);
    b = mul_mod(b, b, modulus);
    e >>= 1;
  }
  return result;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Sinclair's base set; covers every n < 2^64.
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                1795265022ull}) {
    if (a % n == 0) continue;
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

namespace {

constexpr u64 kTrialDivisionBound = 1'000'000;

u64 pollard_brent(u64 n, u64 seed) {
  // Brent's cycle variant of Pollard's rho; n is composite, odd, and has no
  // factor below the trial-division bound.
  SplitMix64 rng(seed);
  for (;;) {
    u64 y = rng.below(n - 1) + 1;
    u64 c = rng.below(n - 1) + 1;
    u64 m = 128;
    u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (mul_mod(y, y, n) + c) % n;
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      // backtrack one step at a time
      do {
        ys = (mul_mod(ys, ys, n) + c) % n;
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
    // degenerate cycle; retry with fresh parameters
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n, /*seed=*/n ^ 0x5bf03635u);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, int>> factorize(u64 n) {
  if (n < 2) throw PreconditionError("factorize requires n >= 2");
  std::vector<u64> primes;
  for (u64 d = 2; d <= kTrialDivisionBound && d * d <= n; d = (d == 2 ? 3 : d + 2)) {
    while (n % d == 0) {
      primes.push_back(d);
      n /= d;
    }
  }
  if (n > 1) factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 q : primes) {
    if (!out.empty() && out.back().first == q) {
      ++out.back().second;
    } else {
      out.emplace_back(q, 1);
    }
  }
  return out;
}

bool is_primitive_root(u64 g, u64 p,
                       const std::vector<std::pair<u64, int>>& factors) {
  if (g % p == 0) return false;
  for (const auto& [q, mult] : factors) {
    (void)mult;
    if (mod_pow(g, (p - 1) / q, p) == 1) return false;
  }
  return true;
}

u64 smallest_primitive_root(u64 p) {
  if (!is_prime(p)) throw NotPrimeError("smallest_primitive_root: p is not prime");
  if (p == 2) return 1;
  auto factors = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    if (is_primitive_root(g, p, factors)) return g;
  }
  throw Error("no primitive root found (unreachable for prime p)");
}

FieldCtx build_ctx(u64 p, std::optional<u64> g) {
  if (p >= FieldCtx::kMaxPrime) {
    throw PreconditionError("p exceeds the 2^62 arithmetic cap");
  }
  if (p < 3 || !is_prime(p)) throw NotPrimeError("build_ctx: p must be an odd prime");
  FieldCtx ctx;
  ctx.p = p;
  ctx.factors_of_p_minus_1 = factorize(p - 1);
  if (g.has_value()) {
    u64 cand = *g;
    if (cand < 2 || cand >= p ||
        !is_primitive_root(cand, p, ctx.factors_of_p_minus_1)) {
      throw NonGeneratorError("build_ctx: g is not a primitive root mod p");
    }
    ctx.g = cand;
  } else {
    for (u64 cand = 2; cand < p; ++cand) {
      if (is_primitive_root(cand, p, ctx.factors_of_p_minus_1)) {
        ctx.g = cand;
        break;
      }
    }
  }
  return ctx;
}

}  // namespace dlogdist
