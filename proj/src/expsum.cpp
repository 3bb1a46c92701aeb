#include "dlogdist/expsum.hpp"

#include <cfloat>
#include <cmath>

#include "dlogdist/kahan.hpp"
#include "dlogdist/parallel.hpp"

namespace dlogdist {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::complex<double> unit_root(u64 x, u64 q) {
  u64 m = x % q;
  double ang = kTwoPi * (static_cast<double>(m) / static_cast<double>(q));
  return {std::cos(ang), std::sin(ang)};
}

UnitRoots::UnitRoots(u64 q) : q_(q) {
  if (q == 0 || q > kMaxModulus) {
    throw PreconditionError("unit-root table modulus out of range");
  }
  w_.resize(q);
  for (u64 x = 0; x < q; ++x) w_[x] = unit_root(x, q);
}

namespace {

double resolvent_err_bound(u64 terms) {
  return kErrBoundFactor * static_cast<double>(terms) * DBL_EPSILON;
}

// zeta^(u g^j) for j = 0..p-2, phases reduced mod p.
std::vector<std::complex<double>> additive_factors(const FieldCtx& ctx, u64 u,
                                                   const UnitRoots& roots_p) {
  std::vector<std::complex<double>> a(ctx.p - 1);
  u64 um = u % ctx.p;
  u64 pw = 1;
  for (u64 j = 0; j + 1 < ctx.p; ++j) {
    a[j] = roots_p(mul_mod(um, pw, ctx.p));
    pw = mul_mod(pw, ctx.g, ctx.p);
  }
  return a;
}

}  // namespace

ResolventValue resolvent(const FieldCtx& ctx, u64 k, u64 u) {
  const u64 order = ctx.p - 1;
  const u64 km = k % order;
  const u64 um = u % ctx.p;
  KahanComplexSum acc;
  u64 pw = 1;       // g^j
  u64 theta_e = 0;  // k*j mod p-1
  for (u64 j = 0; j < order; ++j) {
    acc.add(unit_root(theta_e, order) * unit_root(mul_mod(um, pw, ctx.p), ctx.p));
    theta_e += km;
    if (theta_e >= order) theta_e -= order;
    pw = mul_mod(pw, ctx.g, ctx.p);
  }
  return ResolventValue{acc.value(), order, resolvent_err_bound(order)};
}

std::vector<std::complex<double>> resolvents_for_all_k(const FieldCtx& ctx, u64 u,
                                                       int jobs) {
  const u64 order = ctx.p - 1;
  UnitRoots roots_p(ctx.p);
  UnitRoots roots_o(order);
  auto a = additive_factors(ctx, u, roots_p);
  std::vector<std::complex<double>> out(order);
  parallel_for(jobs, order, [&](u64 k_begin, u64 k_end) {
    for (u64 k = k_begin; k < k_end; ++k) {
      KahanComplexSum acc;
      u64 theta_e = 0;
      for (u64 j = 0; j < order; ++j) {
        acc.add(roots_o(theta_e) * a[j]);
        theta_e += k;
        if (theta_e >= order) theta_e -= order;
      }
      out[k] = acc.value();
    }
  });
  return out;
}

std::vector<std::complex<double>> resolvents_for_all_u(const FieldCtx& ctx, u64 k,
                                                       int jobs) {
  const u64 order = ctx.p - 1;
  UnitRoots roots_p(ctx.p);
  UnitRoots roots_o(order);
  const u64 km = k % order;
  // theta^(kj) and g^j, both indexed by j
  std::vector<std::complex<double>> mult(order);
  std::vector<u64> pw(order);
  u64 theta_e = 0, g_pow = 1;
  for (u64 j = 0; j < order; ++j) {
    mult[j] = roots_o(theta_e);
    pw[j] = g_pow;
    theta_e += km;
    if (theta_e >= order) theta_e -= order;
    g_pow = mul_mod(g_pow, ctx.g, ctx.p);
  }
  std::vector<std::complex<double>> out(ctx.p);
  parallel_for(jobs, ctx.p, [&](u64 u_begin, u64 u_end) {
    for (u64 u = u_begin; u < u_end; ++u) {
      KahanComplexSum acc;
      for (u64 j = 0; j < order; ++j) {
        acc.add(mult[j] * roots_p(mul_mod(u, pw[j], ctx.p)));
      }
      out[u] = acc.value();
    }
  });
  return out;
}

double resolvent_modulus_sq_error(const FieldCtx& ctx, u64 k, u64 u) {
  if (k % (ctx.p - 1) == 0 || u % ctx.p == 0) {
    throw PreconditionError("modulus check requires nontrivial theta and zeta twists");
  }
  auto s = resolvent(ctx, k, u);
  return std::abs(std::norm(s.value) - static_cast<double>(ctx.p));
}

PhaseSum progression_phase_sum(u64 p, const Progression& j, u64 u) {
  validate_progression(j, p);
  const u64 um = u % p;
  const u64 n = j.n;
  // phase of each term is -u(a + jr); ratio between consecutive terms e_p(-ur)
  u64 step = (p - mul_mod(um, j.r % p, p)) % p;            // -ur mod p
  u64 first = (p - mul_mod(um, (j.a + j.r) % p, p)) % p;   // -u(a+r) mod p
  std::complex<double> value;
  if (step == 0) {
    value = static_cast<double>(n) * unit_root(first, p);
  } else {
    // geometric: e_p(first) * (w^n - 1)/(w - 1), w = e_p(step); the power
    // w^n reduces exactly in integers before any trig
    std::complex<double> w = unit_root(step, p);
    std::complex<double> wn = unit_root(mul_mod(step, n % p, p), p);
    value = unit_root(first, p) * (wn - 1.0) / (w - 1.0);
  }
  double bound;
  u64 dist = std::min(step, p - step);  // ||ur/p|| = dist/p, exact
  if (dist == 0) {
    bound = static_cast<double>(n);
  } else {
    bound = std::min(static_cast<double>(n),
                     static_cast<double>(p) / (2.0 * static_cast<double>(dist)));
  }
  return PhaseSum{value, bound};
}

std::complex<double> log_character_sum(const DlogTable& table, const Progression& j,
                                       u64 k) {
  const u64 p = table.ctx.p;
  const u64 order = p - 1;
  validate_progression(j, p);
  const u64 km = k % order;
  KahanComplexSum acc;
  for (u64 i = 1; i <= j.n; ++i) {
    u64 z = j.value(i) % p;
    acc.add(unit_root(mul_mod(km, table.log(z), order), order));
  }
  return acc.value();
}

double verify_inversion(const DlogTable& table, u64 k, u64 z) {
  const FieldCtx& ctx = table.ctx;
  const u64 p = ctx.p;
  const u64 zm = z % p;
  if (zm == 0) throw PreconditionError("verify_inversion requires z != 0 mod p");
  std::complex<double> lhs = unit_root(mul_mod(k % (p - 1), table.log(zm), p - 1), p - 1);
  auto s = resolvents_for_all_u(ctx, k);
  KahanComplexSum acc;
  for (u64 u = 1; u <= p; ++u) {
    u64 um = u % p;
    acc.add(unit_root(p - mul_mod(um, zm, p), p) * s[um]);
  }
  std::complex<double> rhs = acc.value() / static_cast<double>(p);
  return std::abs(lhs - rhs);
}

double verify_decomposition(const DlogTable& table, const Progression& j, u64 k) {
  const FieldCtx& ctx = table.ctx;
  const u64 p = ctx.p;
  std::complex<double> lhs = log_character_sum(table, j, k);
  auto s = resolvents_for_all_u(ctx, k);
  KahanComplexSum acc;
  for (u64 u = 1; u <= p; ++u) {
    u64 um = u % p;
    acc.add(s[um] * progression_phase_sum(p, j, um).value);
  }
  std::complex<double> rhs = acc.value() / static_cast<double>(p);
  return std::abs(lhs - rhs);
}

PvReport pv_bound_check(const DlogTable& table, const Progression& j,
                        std::span<const u64> ks) {
  const u64 p = table.ctx.p;
  PvReport rep;
  rep.bound = std::sqrt(static_cast<double>(p)) *
              (2.0 + std::log(static_cast<double>(p)));
  for (u64 k : ks) {
    if (k % (p - 1) == 0) {
      throw PreconditionError("pv_bound_check excludes k = 0 mod p-1");
    }
    double ratio = std::abs(log_character_sum(table, j, k)) / rep.bound;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax_k = k;
    }
  }
  return rep;
}

}  // namespace dlogdist
