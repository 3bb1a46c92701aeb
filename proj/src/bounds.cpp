#include "dlogdist/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "dlogdist/kahan.hpp"
#include "dlogdist/parallel.hpp"

namespace dlogdist {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
// 314159/100000 < pi; a rational lower bound keeps the capacity test exact.
constexpr u64 kPiLowNum = 314159;
constexpr u64 kPiLowDen = 100000;
}  // namespace

std::vector<double> torus_expsum_moduli(const TorusPoints& m, u64 kmax, int jobs) {
  const u64 d = m.denominator;
  std::vector<double> out(kmax);
  const bool use_table = d <= UnitRoots::kMaxModulus;
  const UnitRoots roots = use_table ? UnitRoots(d) : UnitRoots(1);
  parallel_for(jobs, kmax, [&](u64 begin, u64 end) {
    for (u64 i = begin; i < end; ++i) {
      u64 k = i + 1;
      KahanComplexSum acc;
      for (u64 num : m.numerators) {
        u64 phase = mul_mod(k % d, num, d);
        acc.add(use_table ? roots(phase) : unit_root(phase, d));
      }
      out[i] = std::abs(acc.value());
    }
  });
  return out;
}

double erdos_turan_rhs(const TorusPoints& m, const ETParams& params, const Interval& iv,
                       std::span<const double> moduli) {
  if (params.truncation < 1) throw PreconditionError("truncation K must be >= 1");
  if (m.cardinality() == 0) throw PreconditionError("empty point set");
  if (moduli.size() < params.truncation) {
    throw PreconditionError("not enough precomputed exponential sums");
  }
  const double card = static_cast<double>(m.cardinality());
  const double kp1 = static_cast<double>(params.truncation) + 1.0;
  const double len = rational_diff(iv.alpha, iv.beta);
  double rhs = card / kp1;
  KahanSum tail;
  for (u64 k = 1; k <= params.truncation; ++k) {
    double kernel = 1.0 / kp1 + std::min(len, 1.0 / (kPi * static_cast<double>(k)));
    tail.add(kernel * moduli[k - 1]);
  }
  return rhs + 2.0 * tail.value();
}

double erdos_turan_rhs(const TorusPoints& m, const ETParams& params, const Interval& iv) {
  auto moduli = torus_expsum_moduli(m, params.truncation);
  return erdos_turan_rhs(m, params, iv, moduli);
}

std::vector<BoundReport> theorem1_check(const DlogTable& table, const Progression& j,
                                        std::span<const Interval> intervals,
                                        std::optional<u64> truncation, int jobs) {
  const u64 p = table.ctx.p;
  const u64 big_k = truncation.value_or(p - 1);
  TorusPoints m = log_image(table, j);
  auto moduli = torus_expsum_moduli(m, big_k, jobs);
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  const double ln_p = std::log(static_cast<double>(p));
  std::vector<BoundReport> out;
  out.reserve(intervals.size());
  for (const Interval& iv : intervals) {
    BoundReport rep;
    rep.interval = iv;
    const double len = rational_diff(iv.alpha, iv.beta);
    rep.hypothesis_ok = static_cast<double>(p) * len > 1.0 / kPi;
    rep.lhs = std::abs(interval_discrepancy(m, iv));
    rep.rhs_explicit = erdos_turan_rhs(m, ETParams{big_k}, iv, moduli);
    rep.rhs_theorem = sqrt_p * ln_p * (2.0 + std::log(static_cast<double>(p) * len));
    rep.ratio = rep.rhs_theorem > 0.0 ? rep.lhs / rep.rhs_theorem : 0.0;
    out.push_back(rep);
  }
  return out;
}

ExtremeBoundReport extreme_bound_check(const DlogTable& table, const Progression& j) {
  const u64 p = table.ctx.p;
  TorusPoints m = log_image(table, j);
  ExtremeReport ext = extreme_discrepancy(m);
  ExtremeBoundReport rep;
  rep.cardinality = m.cardinality();
  rep.measured = ext.normalized;
  const double ln_p = std::log(static_cast<double>(p));
  rep.envelope = std::sqrt(static_cast<double>(p)) * ln_p * ln_p /
                 static_cast<double>(m.cardinality());
  rep.constant_estimate = rep.measured / rep.envelope;

  // Any interval of length <= 1/(pi p) holds at most one point iff the points
  // are distinct and the smallest gap exceeds 1/(pi p). Checked against the
  // rational lower bound of pi so the comparison is exact:
  //   gap/(p-1) > 1/(pi_low p)  <=>  gap * pi_low_num * p > pi_low_den * (p-1)
  rep.capacity_ok = true;
  rep.min_gap_num = m.denominator;
  const auto& x = m.numerators;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    u64 gap = x[i + 1] - x[i];
    if (gap == 0) {
      rep.capacity_ok = false;
      rep.min_gap_num = 0;
      break;
    }
    rep.min_gap_num = std::min(rep.min_gap_num, gap);
  }
  if (rep.capacity_ok && !x.empty()) {
    u128 lhs = static_cast<u128>(rep.min_gap_num) * kPiLowNum * p;
    u128 rhs = static_cast<u128>(kPiLowDen) * m.denominator;
    if (lhs <= rhs) rep.capacity_ok = false;
  }
  return rep;
}

CorollaryReport corollary1_count(const DlogTable& table, const Progression& j, u64 s,
                                 u64 t, double delta, double c3_probe) {
  const u64 p = table.ctx.p;
  if (t < s || t > p - 1) throw PreconditionError("window must satisfy 0 <= s <= t <= p-1");
  if (delta <= 0.0) throw PreconditionError("delta must be positive");
  TorusPoints m = log_image(table, j);
  const auto& x = m.numerators;
  auto lo = std::lower_bound(x.begin(), x.end(), s);
  auto hi = std::upper_bound(x.begin(), x.end(), t);
  CorollaryReport rep;
  rep.count = static_cast<u64>(hi - lo);
  rep.window_length = t - s;
  rep.delta = delta;
  rep.c3_probe = c3_probe;
  const double n = static_cast<double>(j.n);
  const double len = static_cast<double>(rep.window_length);
  rep.expected_paper = len * n / static_cast<double>(p);
  rep.expected_torus = len * n / static_cast<double>(p - 1);
  rep.rel_dev_paper = rep.expected_paper > 0.0
                          ? static_cast<double>(rep.count) / rep.expected_paper - 1.0
                          : 0.0;
  rep.rel_dev_torus = rep.expected_torus > 0.0
                          ? static_cast<double>(rep.count) / rep.expected_torus - 1.0
                          : 0.0;
  const double ln_p = std::log(static_cast<double>(p));
  rep.hypothesis_ok = len * n > (c3_probe / delta) *
                                    std::pow(static_cast<double>(p), 1.5) * ln_p * ln_p;
  return rep;
}

}  // namespace dlogdist
