#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dlogdist/dlog.hpp"
#include "dlogdist/torus.hpp"

namespace dlogdist {

// e_q(x) = exp(2*pi*i*x/q) with x reduced mod q before any trig call.
std::complex<double> unit_root(u64 x, u64 q);

// Precomputed table of all q-th roots of unity. Bulk sweeps use it so their
// terms are bit-identical to the streaming single-call path.
class UnitRoots {
 public:
  static constexpr u64 kMaxModulus = u64{1} << 23;

  explicit UnitRoots(u64 q);

  u64 modulus() const { return q_; }
  std::complex<double> operator()(u64 x) const { return w_[x]; }

 private:
  u64 q_;
  std::vector<std::complex<double>> w_;
};

// Twisted sum S(theta^k, zeta^u) = sum_{j=0}^{p-2} theta^(kj) zeta^(u g^j),
// theta of order p-1 and zeta of order p. err_bound is an a-priori rounding
// envelope: kErrBoundFactor * terms * machine epsilon, covering the per-term
// trig error plus compensated summation.
struct ResolventValue {
  std::complex<double> value;
  u64 terms = 0;
  double err_bound = 0.0;
};

constexpr double kErrBoundFactor = 8.0;

// Direct compensated summation in ascending j order.
ResolventValue resolvent(const FieldCtx& ctx, u64 k, u64 u);

// S(theta^k, zeta^u) for all k in [0, p-2] at fixed u. Same term values and
// summation order as resolvent(), so the results match it bit for bit.
std::vector<std::complex<double>> resolvents_for_all_k(const FieldCtx& ctx, u64 u,
                                                       int jobs = 1);

// S(theta^k, zeta^u) for all u in [0, p-1] at fixed k.
std::vector<std::complex<double>> resolvents_for_all_u(const FieldCtx& ctx, u64 k,
                                                       int jobs = 1);

// | |S(theta^k, zeta^u)|^2 - p | for k != 0 mod p-1, u != 0 mod p. The
// trivial twists have their own exact values and are rejected here.
double resolvent_modulus_sq_error(const FieldCtx& ctx, u64 k, u64 u);

// sum_{z in J} e_p(-uz) with the sharp geometric bound
// min(N, (2 ||ur/p||)^-1); distance-to-nearest-integer evaluated exactly.
struct PhaseSum {
  std::complex<double> value;
  double bound = 0.0;
};

PhaseSum progression_phase_sum(u64 p, const Progression& j, u64 u);

// sum_{z in J} e_{p-1}(k log_g z).
std::complex<double> log_character_sum(const DlogTable& table, const Progression& j,
                                       u64 k);

// Residual of theta^(k log z) = (1/p) sum_{u=1}^{p} zeta^(-uz) S(theta^k, zeta^u).
double verify_inversion(const DlogTable& table, u64 k, u64 z);

// Residual of the progression decomposition
// sum_z e_{p-1}(k log z) = (1/p) sum_u S(theta^k, zeta^u) sum_z e_p(-uz).
double verify_decomposition(const DlogTable& table, const Progression& j, u64 k);

// max over the given nonzero k of |log_character_sum| / (sqrt(p)(2 + ln p)).
struct PvReport {
  double max_ratio = 0.0;
  u64 argmax_k = 0;
  double bound = 0.0;  // sqrt(p) * (2 + ln p)
};

PvReport pv_bound_check(const DlogTable& table, const Progression& j,
                        std::span<const u64> ks);

}  // namespace dlogdist
