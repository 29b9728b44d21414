#pragma once

#include <cstdint>
#include <vector>

#include "velspace/velocity.hpp"

namespace velspace {

/// Counter-based uniform draws: the SplitMix64 output function evaluated at
/// state mix(seed) + position * gamma. Draw `position` is addressed directly,
/// so parallel and sequential generation produce the identical stream and the
/// result is reproducible bit-for-bit across platforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform in [0, 1).
  double uniform(std::uint64_t position) const;
  double uniform(std::uint64_t position, double lo, double hi) const;

 private:
  std::uint64_t base_;
};

/// i.i.d. draws from a ball in velocity space, reproducible from
/// (seed, n, radius).
struct SampleBatch {
  std::vector<CartesianVelocity> points;
  std::uint64_t seed = 0;
  double radius = 0.0;  // beta_max (relativistic) or v_max (classical)
};

/// n points uniform w.r.t. the invariant volume on {beta < beta_max}:
/// isotropic direction; radial rapidity r with density proportional to
/// sinh^2(r), drawn by bisecting the normalized CDF (sinh 2r - 2r) to 1e-12;
/// beta = tanh(r).
SampleBatch sample_invariant_ball(double beta_max, std::size_t n, std::uint64_t seed);

/// n points uniform in the Euclidean ball {|v| < v_max} (inverse-CDF radius
/// r = v_max u^{1/3}).
SampleBatch sample_classical_ball(double v_max, std::size_t n, std::uint64_t seed);

}  // namespace velspace
