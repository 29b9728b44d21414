#include "velspace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "velspace/kinematics.hpp"

namespace velspace {

namespace {

void require_scale(double scale, const char* where) {
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw DomainError(std::string(where) + ": scale must be positive, got " +
                      std::to_string(scale));
  }
}

void require_relativistic_pair(const CartesianVelocity& u, const CartesianVelocity& v,
                               const char* where) {
  if (u.model != Model::Relativistic || v.model != Model::Relativistic) {
    throw DomainError(std::string(where) + ": requires relativistic velocities");
  }
}

// sinh(x) - x without cancellation for small x.
double sinh_minus_x(double x) {
  if (std::abs(x) < 0.05) {
    const double x2 = x * x;
    return x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0)));
  }
  return std::sinh(x) - x;
}

}  // namespace

MetricTensor metric_classical_polar(double v, double theta, double scale) {
  require_scale(scale, "metric_classical_polar");
  if (!std::isfinite(v) || v < 0.0 || !std::isfinite(theta)) {
    throw DomainError("metric_classical_polar: requires finite v >= 0 and finite theta");
  }
  const double s = std::sin(theta);
  const double a2 = scale * scale;
  MetricTensor g{Eigen::Matrix3d::Zero(), Coords::Polar, scale, v == 0.0 || s == 0.0};
  g.components.diagonal() << a2, a2 * v * v, a2 * v * v * s * s;
  return g;
}

MetricTensor metric_relativistic_polar(double beta, double theta, double scale) {
  require_scale(scale, "metric_relativistic_polar");
  if (!std::isfinite(beta) || beta < 0.0 || !std::isfinite(theta)) {
    throw DomainError("metric_relativistic_polar: requires finite beta >= 0 and finite theta");
  }
  if (beta >= 1.0) {
    throw DomainError("metric_relativistic_polar: superluminal or lightlike: beta = " +
                      std::to_string(beta));
  }
  const double s = std::sin(theta);
  const double a2 = scale * scale;
  const double one_minus_b2 = (1.0 - beta) * (1.0 + beta);
  MetricTensor g{Eigen::Matrix3d::Zero(), Coords::Polar, scale, beta == 0.0 || s == 0.0};
  g.components.diagonal() << a2 / (one_minus_b2 * one_minus_b2),
      a2 * beta * beta / one_minus_b2, a2 * beta * beta * s * s / one_minus_b2;
  return g;
}

MetricTensor metric_relativistic_cartesian(const CartesianVelocity& v, double scale) {
  require_scale(scale, "metric_relativistic_cartesian");
  if (v.model != Model::Relativistic) {
    throw DomainError("metric_relativistic_cartesian: requires a relativistic velocity");
  }
  const double one_minus_b2 = 1.0 - v.speed_squared();
  const double pref = scale * scale / (one_minus_b2 * one_minus_b2);
  MetricTensor g{Eigen::Matrix3d::Zero(), Coords::Cartesian, scale, false};
  g.components = pref * (one_minus_b2 * Eigen::Matrix3d::Identity() +
                         v.components * v.components.transpose());
  return g;
}

double volume_element(const MetricTensor& g) {
  const double det = g.components.determinant();
  if (!std::isfinite(det)) throw NumericError("volume_element: non-finite determinant");
  if (det < 0.0) {
    throw NumericError("volume_element: negative determinant " + std::to_string(det));
  }
  return std::sqrt(det);
}

double relative_speed(const CartesianVelocity& u, const CartesianVelocity& v) {
  require_relativistic_pair(u, v, "relative_speed");
  const double bu = u.speed();
  if (bu == 0.0) return v.speed();
  const Eigen::Quaterniond align =
      Eigen::Quaterniond::FromTwoVectors(u.components, Eigen::Vector3d::UnitX());
  const CartesianVelocity v_aligned{Model::Relativistic, align * v.components};
  return lorentz_boost_3d(v_aligned, bu).speed();
}

double geodesic_distance(const CartesianVelocity& u, const CartesianVelocity& v,
                         double scale) {
  require_scale(scale, "geodesic_distance");
  require_relativistic_pair(u, v, "geodesic_distance");
  const double bu = u.speed();
  const double bv = v.speed();
  const double ru = beta_to_rapidity(bu);
  const double rv = beta_to_rapidity(bv);
  if (bu == 0.0 || bv == 0.0) return scale * std::abs(ru - rv);

  // 1 - cos(psi) via the chord between unit directions; exact 0 for u == v.
  const double versine =
      0.5 * (u.components / bu - v.components / bv).squaredNorm();
  const double arg = std::cosh(ru - rv) + std::sinh(ru) * std::sinh(rv) * versine;
  return scale * std::acosh(std::max(arg, 1.0));
}

double classical_distance(const CartesianVelocity& u, const CartesianVelocity& v,
                          double scale) {
  require_scale(scale, "classical_distance");
  if (u.model != Model::Classical || v.model != Model::Classical) {
    throw DomainError("classical_distance: requires classical velocities");
  }
  return scale * (u.components - v.components).norm();
}

double ball_volume(double beta_max, double scale) {
  require_scale(scale, "ball_volume");
  if (!std::isfinite(beta_max) || beta_max < 0.0) {
    throw DomainError("ball_volume: beta_max must be in [0, 1)");
  }
  if (beta_max >= 1.0) {
    throw DivergenceError("ball_volume: infinite volume at beta_max >= 1");
  }
  const double r = beta_to_rapidity(beta_max);
  return scale * scale * scale * std::numbers::pi * sinh_minus_x(2.0 * r);
}

}  // namespace velspace
