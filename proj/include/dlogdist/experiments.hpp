#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dlogdist/expsum.hpp"
#include "dlogdist/torus.hpp"

namespace dlogdist {

// |D(M1 u M2; I) - D(M1; I) - D(M2; I)|, evaluated with the count and
// cardinality differences taken in integer arithmetic first, so the result
// is exactly zero whenever the counting identity holds. Rejects overlapping
// sets and mismatched denominators.
double union_discrepancy_residual(const TorusPoints& m1, const TorusPoints& m2,
                                  const Interval& iv,
                                  IntervalMode mode = IntervalMode::kClosed);

// P(x) = a0 + a1 x + ... + an x^n with coefficients reduced mod the phase
// modulus p-1; the leading coefficient must not vanish mod p-1.
struct IntPolynomial {
  std::vector<u64> coefficients;  // index = degree
  u64 modulus = 0;

  std::size_t degree() const { return coefficients.size() - 1; }
};

IntPolynomial make_polynomial(std::span<const i64> coefficients, u64 modulus);

u64 eval_polynomial(const IntPolynomial& poly, u64 x);

// sum_{z in J} e_{p-1}(P(log_g z)); Horner evaluation mod p-1.
std::complex<double> poly_twist_sum(const DlogTable& table, const Progression& j,
                                    const IntPolynomial& poly);

// sum_{z in J} e_{p-1}(a z + b1 log_{g1} z + ... + br log_{gr} z).
// Per-base logs come from the primary table through change of base:
// log_{gi} z = log_g z * inv(log_g gi) mod p-1.
struct MultiBaseSpec {
  i64 a = 0;
  std::vector<std::pair<u64, i64>> bases;  // (g_i, b_i), g_i primitive roots
};

std::complex<double> multibase_sum(const DlogTable& table, const Progression& j,
                                   const MultiBaseSpec& spec);

enum class OrderingMode {
  kExhaustive,          // all increasing r-tuples of J (guarded)
  kExhaustiveAdjacent,  // windows of r consecutive elements of J
  kSampled,             // uniform random distinct r-subsets, seeded
};

// Frequencies of the r! relative orderings of (log x_1, ..., log x_r) over
// tuples x_1 < ... < x_r drawn from J. Keys are rank patterns: digit i gives
// the rank of log x_i among the tuple (1 = smallest). Every permutation key
// is present, zero-filled when unseen.
struct OrderingHistogram {
  u32 tuple_size = 0;
  u64 total = 0;
  std::map<std::string, u64> counts;

  double frequency(const std::string& key) const;
};

OrderingHistogram ordering_frequencies(const DlogTable& table, const Progression& j,
                                       u32 r, OrderingMode mode, u64 sample_count,
                                       u64 seed, int jobs = 1);

}  // namespace dlogdist
