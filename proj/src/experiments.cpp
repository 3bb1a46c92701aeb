#include "dlogdist/experiments.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "dlogdist/kahan.hpp"
#include "dlogdist/parallel.hpp"
#include "dlogdist/rng.hpp"

namespace dlogdist {

double union_discrepancy_residual(const TorusPoints& m1, const TorusPoints& m2,
                                  const Interval& iv, IntervalMode mode) {
  if (m1.denominator != m2.denominator) {
    throw PreconditionError("union check requires a common denominator");
  }
  // exact disjointness on numerators (both sorted)
  std::size_t i = 0, j = 0;
  while (i < m1.numerators.size() && j < m2.numerators.size()) {
    if (m1.numerators[i] == m2.numerators[j]) {
      throw OverlapError("point sets overlap");
    }
    if (m1.numerators[i] < m2.numerators[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  std::vector<u64> merged;
  merged.resize(m1.numerators.size() + m2.numerators.size());
  std::merge(m1.numerators.begin(), m1.numerators.end(), m2.numerators.begin(),
             m2.numerators.end(), merged.begin());
  TorusPoints both{m1.denominator, std::move(merged)};

  i64 count_delta = static_cast<i64>(count_points(both, iv, mode)) -
                    static_cast<i64>(count_points(m1, iv, mode)) -
                    static_cast<i64>(count_points(m2, iv, mode));
  i64 card_delta = static_cast<i64>(both.cardinality()) -
                   static_cast<i64>(m1.cardinality()) -
                   static_cast<i64>(m2.cardinality());
  double len = rational_diff(iv.alpha, iv.beta);
  return std::abs(static_cast<double>(count_delta) -
                  len * static_cast<double>(card_delta));
}

IntPolynomial make_polynomial(std::span<const i64> coefficients, u64 modulus) {
  if (modulus < 2) throw PreconditionError("polynomial modulus must be >= 2");
  if (coefficients.empty()) throw PreconditionError("polynomial needs coefficients");
  IntPolynomial poly;
  poly.modulus = modulus;
  poly.coefficients.reserve(coefficients.size());
  for (i64 c : coefficients) {
    i64 r = c % static_cast<i64>(modulus);
    if (r < 0) r += static_cast<i64>(modulus);
    poly.coefficients.push_back(static_cast<u64>(r));
  }
  if (poly.coefficients.back() == 0) {
    throw PreconditionError("leading coefficient vanishes mod p-1");
  }
  return poly;
}

u64 eval_polynomial(const IntPolynomial& poly, u64 x) {
  const u64 m = poly.modulus;
  u64 xm = x % m;
  u64 acc = 0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
    acc = (mul_mod(acc, xm, m) + *it) % m;
  }
  return acc;
}

std::complex<double> poly_twist_sum(const DlogTable& table, const Progression& j,
                                    const IntPolynomial& poly) {
  const u64 p = table.ctx.p;
  validate_progression(j, p);
  if (poly.modulus != p - 1) {
    throw PreconditionError("polynomial modulus must equal p-1");
  }
  KahanComplexSum acc;
  for (u64 i = 1; i <= j.n; ++i) {
    u64 z = j.value(i) % p;
    acc.add(unit_root(eval_polynomial(poly, table.log(z)), p - 1));
  }
  return acc.value();
}

namespace {

u64 mod_inverse(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
  while (nr != 0) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw PreconditionError("value not invertible in Z_(p-1)");
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

u64 reduce_signed(i64 v, u64 m) {
  i64 r = v % static_cast<i64>(m);
  if (r < 0) r += static_cast<i64>(m);
  return static_cast<u64>(r);
}

}  // namespace

std::complex<double> multibase_sum(const DlogTable& table, const Progression& j,
                                   const MultiBaseSpec& spec) {
  const FieldCtx& ctx = table.ctx;
  const u64 p = ctx.p;
  const u64 order = p - 1;
  validate_progression(j, p);
  if (spec.bases.empty()) throw PreconditionError("multibase spec needs at least one base");
  // per-base multiplier: log_{gi} z = inv(log_g gi) * log_g z mod p-1;
  // gi is a generator exactly when log_g gi is invertible
  struct Base {
    u64 mult;
    u64 coeff;
  };
  std::vector<Base> bases;
  bases.reserve(spec.bases.size());
  for (const auto& [gi, bi] : spec.bases) {
    if (gi < 2 || gi >= p ||
        !is_primitive_root(gi, p, ctx.factors_of_p_minus_1)) {
      throw NonGeneratorError("multibase base is not a primitive root");
    }
    bases.push_back(Base{mod_inverse(table.log(gi), order), reduce_signed(bi, order)});
  }
  const u64 a = reduce_signed(spec.a, order);
  KahanComplexSum acc;
  for (u64 i = 1; i <= j.n; ++i) {
    u64 z = j.value(i) % p;
    u64 lg = table.log(z);
    u64 phase = mul_mod(a, z % order, order);
    for (const Base& b : bases) {
      phase = (phase + mul_mod(b.coeff, mul_mod(b.mult, lg, order), order)) % order;
    }
    acc.add(unit_root(phase, order));
  }
  return acc.value();
}

double OrderingHistogram::frequency(const std::string& key) const {
  auto it = counts.find(key);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

namespace {

constexpr u64 kMaxExhaustiveTuples = 10'000'000;
constexpr u32 kMaxTupleSize = 8;

u64 factorial(u32 r) {
  u64 f = 1;
  for (u32 i = 2; i <= r; ++i) f *= i;
  return f;
}

u64 binomial_capped(u64 n, u32 r, u64 cap) {
  u128 acc = 1;
  for (u32 i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<u64>(acc);
}

// rank pattern of logs: digit i is the rank of logs[i], 1 = smallest
std::string rank_pattern(std::span<const u64> logs) {
  std::array<u32, kMaxTupleSize> idx{};
  u32 r = static_cast<u32>(logs.size());
  for (u32 i = 0; i < r; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.begin() + r,
            [&](u32 a, u32 b) { return logs[a] < logs[b]; });
  std::string key(r, '0');
  for (u32 rank = 0; rank < r; ++rank) {
    key[idx[rank]] = static_cast<char>('1' + rank);
  }
  return key;
}

void all_permutation_keys(u32 r, std::map<std::string, u64>& counts) {
  std::string perm;
  for (u32 i = 1; i <= r; ++i) perm.push_back(static_cast<char>('0' + i));
  do {
    counts.emplace(perm, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

OrderingHistogram ordering_frequencies(const DlogTable& table, const Progression& j,
                                       u32 r, OrderingMode mode, u64 sample_count,
                                       u64 seed, int jobs) {
  const u64 p = table.ctx.p;
  validate_progression(j, p);
  if (r < 1 || r > kMaxTupleSize) {
    throw PreconditionError("tuple size must be in [1, 8]");
  }
  if (j.n < r) throw PreconditionError("progression shorter than the tuple size");

  OrderingHistogram hist;
  hist.tuple_size = r;
  all_permutation_keys(r, hist.counts);

  // logs[i] = log of the (i+1)-th progression element; elements increase
  // with the index, so index order is value order
  std::vector<u64> logs(j.n);
  for (u64 i = 1; i <= j.n; ++i) logs[i - 1] = table.log(j.value(i) % p);

  std::array<u64, kMaxTupleSize> tuple{};
  auto record = [&](std::map<std::string, u64>& counts, std::span<const u64> t) {
    counts[rank_pattern(t)] += 1;
  };

  switch (mode) {
    case OrderingMode::kExhaustive: {
      if (binomial_capped(j.n, r, kMaxExhaustiveTuples) > kMaxExhaustiveTuples) {
        throw PreconditionError("exhaustive mode exceeds the tuple guard");
      }
      std::vector<u32> pick(r);
      std::iota(pick.begin(), pick.end(), 0);
      for (;;) {
        for (u32 i = 0; i < r; ++i) tuple[i] = logs[pick[i]];
        record(hist.counts, std::span<const u64>(tuple.data(), r));
        ++hist.total;
        // next combination
        i64 pos = r - 1;
        while (pos >= 0 && pick[pos] == j.n - r + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (u32 q = static_cast<u32>(pos) + 1; q < r; ++q) pick[q] = pick[q - 1] + 1;
      }
      break;
    }
    case OrderingMode::kExhaustiveAdjacent: {
      for (u64 start = 0; start + r <= j.n; ++start) {
        for (u32 i = 0; i < r; ++i) tuple[i] = logs[start + i];
        record(hist.counts, std::span<const u64>(tuple.data(), r));
        ++hist.total;
      }
      break;
    }
    case OrderingMode::kSampled: {
      if (sample_count == 0) throw PreconditionError("sampled mode needs sample_count > 0");
      // one keyed stream per tuple index: partitionable and order-free
      std::size_t workers = jobs > 1 ? static_cast<std::size_t>(jobs) : 1;
      std::vector<std::map<std::string, u64>> partial(workers);
      std::vector<u64> totals(workers, 0);
      parallel_for_indexed(jobs, sample_count, [&](u64 slot, u64 begin, u64 end) {
        std::array<u64, kMaxTupleSize> local{};
        std::array<u64, kMaxTupleSize> picks{};
        for (u64 t = begin; t < end; ++t) {
          SplitMix64 rng = keyed_stream(seed, t);
          u32 got = 0;
          while (got < r) {
            u64 cand = rng.below(j.n);
            bool dup = false;
            for (u32 q = 0; q < got; ++q) dup = dup || picks[q] == cand;
            if (!dup) picks[got++] = cand;
          }
          std::sort(picks.begin(), picks.begin() + r);
          for (u32 i = 0; i < r; ++i) local[i] = logs[picks[i]];
          partial[slot][rank_pattern(std::span<const u64>(local.data(), r))] += 1;
          ++totals[slot];
        }
      });
      for (std::size_t s = 0; s < workers; ++s) {
        for (const auto& [key, cnt] : partial[s]) hist.counts[key] += cnt;
        hist.total += totals[s];
      }
      break;
    }
  }
  return hist;
}

}  // namespace dlogdist
