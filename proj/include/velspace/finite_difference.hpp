#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Core>

namespace velspace {

/// Central-difference step: relative 1e-6 with an absolute floor of 1e-6,
/// balancing O(h^2) truncation against round-off at double precision.
inline double fd_step(double x) { return std::max(1e-6, 1e-6 * std::abs(x)); }

inline double central_difference(const std::function<double(double)>& f, double x) {
  const double h = fd_step(x);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// J_ij = d f_i / d x_j by central differences.
inline Eigen::Matrix3d fd_jacobian(
    const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>& f,
    const Eigen::Vector3d& x) {
  Eigen::Matrix3d j;
  for (int col = 0; col < 3; ++col) {
    const double h = fd_step(x[col]);
    Eigen::Vector3d xp = x, xm = x;
    xp[col] += h;
    xm[col] -= h;
    j.col(col) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

}  // namespace velspace
