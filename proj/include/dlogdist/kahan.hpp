#pragma once

#include <complex>

namespace dlogdist {

// Kahan compensated accumulator. Requires that the build does not enable
// -ffast-math, which would cancel the compensation algebraically.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

struct KahanComplexSum {
  KahanSum re;
  KahanSum im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }

  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace dlogdist
