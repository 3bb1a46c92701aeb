#pragma once

#include <cstddef>
#include <vector>

#include "dlogdist/dlog.hpp"
#include "dlogdist/rational.hpp"

namespace dlogdist {

// The set {a + jr : 1 <= j <= N}. Valid against a prime p when
// a + r >= 1 and a + N*r <= p - 1, which keeps every element in [1, p-1].
struct Progression {
  u64 a = 0;
  u64 r = 1;
  u64 n = 1;

  u64 value(u64 j) const { return a + j * r; }  // 1-based
};

void validate_progression(const Progression& j, u64 p);

// Finite multiset of rationals num/denominator in [0, 1), numerators sorted.
struct TorusPoints {
  u64 denominator = 1;
  std::vector<u64> numerators;

  std::size_t cardinality() const { return numerators.size(); }
};

TorusPoints make_torus_points(u64 denominator, std::vector<u64> numerators);

// {log_g(a + jr) / (p-1) : 1 <= j <= N}.
TorusPoints log_image(const DlogTable& table, const Progression& j);

// Closed interval [alpha, beta] in [0, 1]; degenerate alpha = beta allowed.
struct Interval {
  Rational alpha;
  Rational beta;

  Interval() : alpha(0, 1), beta(1, 1) {}
  Interval(Rational a, Rational b);
};

enum class IntervalMode {
  kClosed,    // points counted in [alpha, beta]
  kHalfOpen,  // points counted in [alpha, beta)
};

// Exact count of points inside the interval; binary search with rational
// endpoint comparisons.
std::size_t count_points(const TorusPoints& m, const Interval& iv,
                         IntervalMode mode = IntervalMode::kClosed);

// card(M cap [alpha,beta]) - (beta-alpha) * card(M), signed.
double interval_discrepancy(const TorusPoints& m, const Interval& iv,
                            IntervalMode mode = IntervalMode::kClosed);

// sup over 0 <= alpha <= beta <= 1 of |D(M; alpha, beta)| for closed
// intervals. raw_num / denominator is the exact supremum; the normalized
// value divides by card(M). When attained_as_limit is set the supremum is
// approached by intervals shrinking onto (alpha, beta) from inside and is
// not attained by any single closed interval.
struct ExtremeReport {
  double raw = 0.0;
  double normalized = 0.0;
  std::size_t cardinality = 0;
  Rational alpha;
  Rational beta;
  bool attained_as_limit = false;
  i128 raw_num = 0;
  u64 denominator = 1;
};

ExtremeReport extreme_discrepancy(const TorusPoints& m);

// O(N^2) reference: every pair of candidate endpoints with every open/closed
// side combination, evaluated in exact integer arithmetic. Guarded to
// cardinality <= 5000.
ExtremeReport brute_force_extreme_discrepancy(const TorusPoints& m);

}  // namespace dlogdist
