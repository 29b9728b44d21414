#pragma once

#include <cmath>

#include <Eigen/Core>

#include "velspace/error.hpp"

namespace velspace {

/// Which law of mechanics governs the velocity space.
enum class Model { Classical, Relativistic };

const char* to_string(Model model);

/// Inputs this close to the light sphere are accepted but lose precision in
/// boost denominators (1 - alpha*beta); callers may surface the flag.
inline constexpr double kNearLightlike = 1e-12;

inline bool near_lightlike(double speed) { return 1.0 - std::abs(speed) < kNearLightlike; }

/// A velocity in Cartesian components. Relativistic components are fractions
/// of c and must lie strictly inside the unit ball; classical components are
/// unbounded. Treat instances as immutable values.
struct CartesianVelocity {
  Model model;
  Eigen::Vector3d components;

  CartesianVelocity(Model model, const Eigen::Vector3d& components);

  static CartesianVelocity classical(double vx, double vy, double vz) {
    return {Model::Classical, {vx, vy, vz}};
  }
  static CartesianVelocity relativistic(double bx, double by, double bz) {
    return {Model::Relativistic, {bx, by, bz}};
  }

  double speed() const { return components.norm(); }
  double speed_squared() const { return components.squaredNorm(); }
};

/// A velocity in the spherical chart with polar axis x:
///   v_x = beta cos(theta),
///   v_y = beta sin(theta) sin(phi),
///   v_z = beta sin(theta) cos(phi).
/// Degenerate points are canonical: beta = 0 implies cos_theta = 1, phi = 0;
/// sin(theta) = 0 implies phi = 0.
struct PolarVelocity {
  Model model;
  double beta;       // speed; < 1 in relativistic mode
  double cos_theta;  // in [-1, 1]
  double phi;        // in [0, 2*pi)

  PolarVelocity(Model model, double beta, double cos_theta, double phi);

  double sin_theta() const { return std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta)); }
};

/// Signed collinear rapidity b = arctanh(beta); additive under collinear
/// relativistic boosts.
struct Rapidity {
  double value;

  explicit Rapidity(double value);
  double beta() const { return std::tanh(value); }
};

PolarVelocity cartesian_to_polar(const CartesianVelocity& v);
CartesianVelocity polar_to_cartesian(const PolarVelocity& p);

/// arctanh(beta) = 0.5*log((1+beta)/(1-beta)), evaluated through log1p so the
/// result stays accurate as |beta| approaches 1.
double beta_to_rapidity(double beta);

/// tanh(b); inverse of beta_to_rapidity.
double rapidity_to_beta(double b);

}  // namespace velspace
