// Shared helpers for the test suite: error metrics and independent
// higher-precision reference evaluations used as oracles.
#pragma once

#include <cmath>

#include "velspace/sampler.hpp"
#include "velspace/velocity.hpp"

namespace testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

/// Relative error where the reference exceeds 1e-6 in magnitude, absolute
/// otherwise.
inline double ref_err(double got, double want) {
  const double err = std::abs(got - want);
  return std::abs(want) > 1e-6 ? err / std::abs(want) : err;
}

/// Velocity addition evaluated in extended precision, as an independent
/// oracle for the compensated double-precision implementation.
inline long double mobius_long(double beta, double alpha) {
  const long double b = beta, a = alpha;
  return (b - a) / (1.0L - a * b);
}

/// Random interior polar point from the counter RNG: beta in (lo, hi),
/// cos_theta in [-1, 1], phi in [0, 2pi). Consumes positions at..at+2.
inline velspace::PolarVelocity random_polar(const velspace::CounterRng& rng, std::uint64_t at,
                                            double lo = 1e-3, double hi = 0.99) {
  const double beta = rng.uniform(at, lo, hi);
  const double cos_theta = rng.uniform(at + 1, -1.0, 1.0);
  double phi = rng.uniform(at + 2, 0.0, 6.283185307179586);
  if (phi >= 6.283185307179586) phi = 0.0;
  return velspace::PolarVelocity(velspace::Model::Relativistic, beta, cos_theta, phi);
}

}  // namespace testing
