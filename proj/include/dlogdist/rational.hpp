#pragma once

#include <numeric>
#include <string>

#include "dlogdist/common.hpp"

namespace dlogdist {

// Exact rational with a 64-bit numerator and positive denominator.
// Interval endpoints and point positions are always compared through this
// type; ties at endpoints must never be decided by floating point.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  Rational() = default;

  Rational(i64 n, i64 d) : num(n), den(d) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational of_int(i64 n) { return Rational(n, 1); }

  // Accepts "3/8", "0.25", "1", ".5". Decimal part limited to 18 digits.
  static Rational parse(const std::string& text);

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;  // both normalized
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<i128>(a.num) * b.den < static_cast<i128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

// b - a evaluated without forming an intermediate Rational (the cross
// products can exceed 64 bits even when the result is small).
inline double rational_diff(const Rational& a, const Rational& b) {
  i128 num = static_cast<i128>(b.num) * a.den - static_cast<i128>(a.num) * b.den;
  i128 den = static_cast<i128>(a.den) * b.den;
  return static_cast<double>(static_cast<long double>(num) /
                             static_cast<long double>(den));
}

// x/xden <=> r, exact. xden > 0.
inline int compare_fraction(u64 x, u64 xden, const Rational& r) {
  i128 lhs = static_cast<i128>(x) * r.den;
  i128 rhs = static_cast<i128>(r.num) * static_cast<i128>(xden);
  if (lhs < rhs) return -1;
  return lhs == rhs ? 0 : 1;
}

}  // namespace dlogdist
