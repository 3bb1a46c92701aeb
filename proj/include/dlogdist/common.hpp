#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dlogdist {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// p failed the primality test.
class NotPrimeError : public Error {
 public:
  using Error::Error;
};

// g is not a generator of the multiplicative group mod p.
class NonGeneratorError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (range, cap, guard).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Point sets passed to a union operation are not disjoint.
class OverlapError : public Error {
 public:
  using Error::Error;
};

// Randomized solver exhausted its retry budget (signals RNG pathology).
class RetryExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlogdist
