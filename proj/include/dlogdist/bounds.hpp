#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dlogdist/expsum.hpp"
#include "dlogdist/torus.hpp"

namespace dlogdist {

struct ETParams {
  u64 truncation;  // K >= 1
};

// |sum_{x in M} exp(2 pi i k x)| for k = 1..kmax, fixed summation order.
std::vector<double> torus_expsum_moduli(const TorusPoints& m, u64 kmax, int jobs = 1);

// card/(K+1) + 2 sum_{k=1}^{K} (1/(K+1) + min(beta-alpha, 1/(pi k))) |T_k|,
// evaluated exactly as displayed with the exponential sums taken from M.
double erdos_turan_rhs(const TorusPoints& m, const ETParams& params, const Interval& iv);

// Variant reusing precomputed |T_k| (moduli[k-1] = |T_k|, k <= truncation).
double erdos_turan_rhs(const TorusPoints& m, const ETParams& params, const Interval& iv,
                       std::span<const double> moduli);

// One interval's worth of evidence: measured |D| against the explicit
// Erdos-Turan chain and against the sqrt(p)-shaped envelope whose constant
// the ratio estimates.
struct BoundReport {
  Interval interval;
  double lhs = 0.0;            // measured |D(M; alpha, beta)|
  double rhs_explicit = 0.0;   // ET chain value
  double rhs_theorem = 0.0;    // sqrt(p) ln(p) (2 + ln(p(beta-alpha)))
  double ratio = 0.0;          // lhs / rhs_theorem, empirical constant
  bool hypothesis_ok = false;  // p(beta-alpha) > 1/pi
};

// K defaults to p-1 when not supplied.
std::vector<BoundReport> theorem1_check(const DlogTable& table, const Progression& j,
                                        std::span<const Interval> intervals,
                                        std::optional<u64> truncation = std::nullopt,
                                        int jobs = 1);

struct ExtremeBoundReport {
  double measured = 0.0;        // normalized extreme discrepancy
  double envelope = 0.0;        // sqrt(p) ln^2(p) / card
  double constant_estimate = 0.0;
  bool capacity_ok = false;     // no interval of length <= 1/(pi p) holds 2 points
  u64 min_gap_num = 0;          // smallest numerator gap between distinct points
  std::size_t cardinality = 0;
};

ExtremeBoundReport extreme_bound_check(const DlogTable& table, const Progression& j);

// Counts logarithms of J falling in the integer window [s, t] of [0, p-1].
// expected_paper is (t-s) N / p; expected_torus rescales by the actual
// point spacing 1/(p-1), which makes the full-range/full-window deviation
// vanish identically.
struct CorollaryReport {
  u64 count = 0;
  u64 window_length = 0;  // t - s
  double expected_paper = 0.0;
  double expected_torus = 0.0;
  double rel_dev_paper = 0.0;
  double rel_dev_torus = 0.0;
  bool hypothesis_ok = false;  // M N > (c3/delta) p^(3/2) ln^2 p
  double c3_probe = 0.0;
  double delta = 0.0;
};

CorollaryReport corollary1_count(const DlogTable& table, const Progression& j, u64 s,
                                 u64 t, double delta, double c3_probe = 1.0);

}  // namespace dlogdist
