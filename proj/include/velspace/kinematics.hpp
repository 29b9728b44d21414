#pragma once

#include <optional>

#include <Eigen/Core>

#include "velspace/velocity.hpp"

namespace velspace {

/// Change of inertial frame: relative speed `alpha` along the x axis
/// (fraction of c in relativistic mode), optionally composed with a proper
/// rotation applied after the translation/boost.
struct Boost {
  Model model;
  double alpha;
  std::optional<Eigen::Matrix3d> rotation;

  Boost(Model model, double alpha, std::optional<Eigen::Matrix3d> rotation = std::nullopt);
};

/// True if R is orthogonal with det +1, entrywise within tol.
bool is_rotation(const Eigen::Matrix3d& r, double tol = 1e-12);

/// Rotations act the same way in both models and preserve the speed.
CartesianVelocity rotate(const CartesianVelocity& v, const Eigen::Matrix3d& r);

/// v' = v - v_r.
double galilean_boost_1d(double v, double v_r);

/// v' = R(v - v_r x_hat); an isometry of Euclidean velocity space
/// (unit Jacobian).
CartesianVelocity galilean_boost_3d(const CartesianVelocity& v, const Boost& boost);

/// beta' = (beta - alpha) / (1 - alpha*beta), compensated so the rounding of
/// beta' stays below an ulp: rapidity additivity arctanh(beta') = b - a is
/// checked to 1e-12, and arctanh amplifies quotient error by 1/(1-beta'^2)
/// near the light sphere.
double lorentz_boost_1d(double beta, double alpha);

/// Relativistic velocity addition for a boost with speed alpha along x:
///   beta_x' = (beta_x - alpha) / (1 - alpha beta_x)
///   beta_{y,z}' = beta_{y,z} sqrt(1 - alpha^2) / (1 - alpha beta_x).
CartesianVelocity lorentz_boost_3d(const CartesianVelocity& v, double alpha);

/// The boost map in the (beta, cos_theta, phi) chart:
///   beta'      = sqrt(D) / (1 - alpha beta cos_theta)
///   cos_theta' = (beta cos_theta - alpha) / sqrt(D)
///   phi'       = phi
/// with D = (beta cos_theta - alpha)^2 + beta^2 sin^2(theta) (1 - alpha^2),
/// the algebraically nonnegative form of
/// (1 - alpha beta cos_theta)^2 - (1 - beta^2)(1 - alpha^2).
/// A boost into the particle frame (beta' = 0) returns the canonical zero.
PolarVelocity polar_lorentz_boost(const PolarVelocity& p, double alpha);

/// Group composition: applying boosts alpha1 then alpha2 equals one boost by
/// (alpha1 + alpha2) / (1 + alpha1 alpha2).
double compose_boosts(double alpha1, double alpha2);

/// Group inverse: -alpha.
double inverse_boost(double alpha);

}  // namespace velspace
