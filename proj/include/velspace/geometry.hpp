#pragma once

#include <Eigen/Core>

#include "velspace/velocity.hpp"

namespace velspace {

enum class Coords { Cartesian, Polar };

/// Symmetric positive (semi)definite metric g_ij at a point of velocity
/// space. `degenerate` marks chart artifacts (v = 0 or sin_theta = 0 in the
/// polar chart) where some diagonal entries vanish; these are coordinate
/// singularities, not geometric ones.
struct MetricTensor {
  Eigen::Matrix3d components;
  Coords coords;
  double scale;
  bool degenerate = false;
};

/// Euclidean metric in the (v, theta, phi) chart:
/// diag(a^2, a^2 v^2, a^2 v^2 sin^2 theta).
MetricTensor metric_classical_polar(double v, double theta, double scale = 1.0);

/// Hyperbolic metric of relativistic velocity space in the (beta, theta, phi)
/// chart: diag(a^2/(1-b^2)^2, a^2 b^2/(1-b^2), a^2 b^2 sin^2(theta)/(1-b^2)).
MetricTensor metric_relativistic_polar(double beta, double theta, double scale = 1.0);

/// The same metric in Cartesian components:
/// a^2/(1-|b|^2)^2 * [(1-|b|^2) I + b b^T].
MetricTensor metric_relativistic_cartesian(const CartesianVelocity& v, double scale = 1.0);

/// sqrt(det g); the invariant volume density in the tensor's chart.
double volume_element(const MetricTensor& g);

/// Geodesic distance of the hyperbolic metric, via the hyperbolic law of
/// cosines in the beta = tanh(r) chart:
///   d = a * arccosh(cosh r_u cosh r_v - sinh r_u sinh r_v cos psi),
/// evaluated as cosh(r_u - r_v) + sinh r_u sinh r_v (1 - cos psi) so the
/// argument never drops below 1. Agrees with a * arctanh(relative_speed) to
/// 1e-10.
double geodesic_distance(const CartesianVelocity& u, const CartesianVelocity& v,
                         double scale = 1.0);

/// Speed of v in the rest frame of u, computed by rotating u onto the x axis
/// and boosting by |u|. The invariant distance equals a * arctanh of this.
double relative_speed(const CartesianVelocity& u, const CartesianVelocity& v);

/// a * |u - v| under the Euclidean metric.
double classical_distance(const CartesianVelocity& u, const CartesianVelocity& v,
                          double scale = 1.0);

/// Invariant volume of the ball {beta <= beta_max}:
///   a^3 pi (sinh 2r - 2r), r = arctanh(beta_max).
/// Grows like a^3 pi e^{2r} / 2 and diverges as beta_max -> 1.
double ball_volume(double beta_max, double scale = 1.0);

}  // namespace velspace
