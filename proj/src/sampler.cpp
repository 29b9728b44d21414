#include "velspace/sampler.hpp"

#include <cmath>

#include "velspace/error.hpp"

namespace velspace {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

// SplitMix64 output function (Steele, Lea & Flood 2014).
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Inverse CDF of the radial rapidity density on [0, R]: solves
// (sinh 2r - 2r) / (sinh 2R - 2R) = u by bisection until the CDF is matched
// to 1e-12. The CDF is continuous and strictly increasing, so the bracket
// value converges to the quantile.
double radial_rapidity_quantile(double u, double rapidity_max) {
  const double norm = std::sinh(2.0 * rapidity_max) - 2.0 * rapidity_max;
  double lo = 0.0;
  double hi = rapidity_max;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = (std::sinh(2.0 * mid) - 2.0 * mid) / norm;
    if (std::abs(cdf - u) <= 1e-12) return mid;
    (cdf < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(mix64(seed ^ (kGamma * (stream + 1)))) {}

double CounterRng::uniform(std::uint64_t position) const {
  const std::uint64_t bits = mix64(base_ + position * kGamma);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t position, double lo, double hi) const {
  return lo + (hi - lo) * uniform(position);
}

SampleBatch sample_invariant_ball(double beta_max, std::size_t n, std::uint64_t seed) {
  if (!(beta_max > 0.0) || !(beta_max < 1.0)) {
    throw DomainError("sample_invariant_ball: beta_max must lie in (0, 1)");
  }
  const double rapidity_max = std::atanh(beta_max);
  const CounterRng rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.radius = beta_max;
  batch.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t at = 3 * static_cast<std::uint64_t>(i);
    const double r = radial_rapidity_quantile(rng.uniform(at), rapidity_max);
    const double cos_theta = rng.uniform(at + 1, -1.0, 1.0);
    double phi = rng.uniform(at + 2, 0.0, kTwoPi);
    if (phi >= kTwoPi) phi = 0.0;
    const PolarVelocity polar(Model::Relativistic, std::tanh(r), cos_theta, phi);
    batch.points.push_back(polar_to_cartesian(polar));
  }
  return batch;
}

SampleBatch sample_classical_ball(double v_max, std::size_t n, std::uint64_t seed) {
  if (!(v_max > 0.0)) {
    throw DomainError("sample_classical_ball: v_max must be positive");
  }
  const CounterRng rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.radius = v_max;
  batch.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t at = 3 * static_cast<std::uint64_t>(i);
    const double speed = v_max * std::cbrt(rng.uniform(at));
    const double cos_theta = rng.uniform(at + 1, -1.0, 1.0);
    double phi = rng.uniform(at + 2, 0.0, kTwoPi);
    if (phi >= kTwoPi) phi = 0.0;
    const PolarVelocity polar(Model::Classical, speed, cos_theta, phi);
    batch.points.push_back(polar_to_cartesian(polar));
  }
  return batch;
}

}  // namespace velspace
