#pragma once

// Deterministic helpers shared by the test binaries.

#include <random>
#include <string>
#include <vector>

#include "polyrank/arith.hpp"

namespace polyrank::test {

/// Uniform integer in [lo, hi]; avoids std::uniform_int_distribution so the
/// sequence is identical across standard library implementations.
inline long uniform(std::mt19937& rng, long lo, long hi) {
  const unsigned long span = static_cast<unsigned long>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

inline Rational rat(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline RatVector rvec(std::initializer_list<Rational> xs) { return RatVector(xs); }

inline Rational random_rational(std::mt19937& rng, long lo, long hi, long max_den) {
  const long den = uniform(rng, 1, max_den);
  return rat(uniform(rng, lo * den, hi * den), den);
}

}  // namespace polyrank::test
