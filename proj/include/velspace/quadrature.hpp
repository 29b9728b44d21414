#pragma once

#include <functional>

#include <Eigen/Core>

namespace velspace {

/// Adaptive Gauss-Legendre integral of f over [a, b]; bisects until the
/// embedded 8- vs 16-point estimates agree to rel_tol locally.
/// Throws NumericError if the recursion does not converge.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-10);

/// Adaptive tensor-product Gauss-Legendre integral of f over the axis-aligned
/// box [lo, hi]; splits the longest axis until converged.
double integrate_box(const std::function<double(const Eigen::Vector3d&)>& f,
                     const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                     double rel_tol = 1e-10);

}  // namespace velspace
