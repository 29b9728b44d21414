#pragma once

#include <functional>
#include <optional>
#include <variant>

#include <Eigen/Core>

#include "velspace/kinematics.hpp"
#include "velspace/velocity.hpp"

namespace velspace {

/// Which coordinate differentials a density is taken with respect to.
/// Polar means d(beta) d(cos_theta) d(phi), not d(beta) d(theta) d(phi).
enum class Parametrization { Cartesian1D, Cartesian3D, Polar, Rapidity, Energy };

const char* to_string(Parametrization p);

/// A least-informative density evaluated at one point. The scale constant a
/// is arbitrary (the priors are improper); densities are reported
/// unnormalized.
struct DensityValue {
  double value;
  Parametrization parametrization;
  double scale;
};

/// Total and rest energy in the same units; E = E0 / sqrt(1 - beta^2).
struct EnergyPoint {
  double energy;
  double rest_energy;

  EnergyPoint(double energy, double rest_energy);
  double beta() const { return std::sqrt((energy - rest_energy) * (energy + rest_energy)) / energy; }
};

/// Uniform prior of classical velocity space: the constant a in any
/// dimension.
DensityValue prior_classical(const CartesianVelocity& v, double scale = 1.0);

/// 1D relativistic prior a / (1 - beta^2).
DensityValue prior_relativistic_1d(double beta, double scale = 1.0);

/// Prior in the (beta, cos_theta, phi) chart: a beta^2 / (1 - beta^2)^2.
DensityValue prior_relativistic_polar(const PolarVelocity& p, double scale = 1.0);

/// Prior in Cartesian components: a / (1 - |beta|^2)^2.
DensityValue prior_relativistic_cartesian(const CartesianVelocity& v, double scale = 1.0);

/// Pushforward of the 1D prior to rapidity b = arctanh(beta): the constant a.
DensityValue prior_relativistic_rapidity(double b, double scale = 1.0);

/// Pushforward of the 1D prior (speed branch beta >= 0) to total energy:
/// a / sqrt(E^2 - E0^2). Diverges at E = E0, so E must exceed E0.
DensityValue prior_relativistic_energy(const EnergyPoint& point, double scale = 1.0);

/// An invertible reparametrization y = T(x) of a scalar parameter, described
/// by its inverse. When no analytic derivative is supplied the Jacobian
/// falls back to central finite differences.
struct ScalarTransform {
  std::function<double(double)> inverse;                       // y -> x
  std::function<double(double)> inverse_derivative = nullptr;  // optional d(inverse)/dy
};

/// Conservation of probabilities: the density of y at y_new is
/// density_x(T^-1(y_new)) * |d T^-1 / dy|. Throws NumericError if the
/// Jacobian is singular.
double reparametrize_density(const std::function<double(double)>& density,
                             const ScalarTransform& transform, double y_new);

/// 3D analogue with a Jacobian determinant.
struct VectorTransform {
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> inverse;
  std::function<Eigen::Matrix3d(const Eigen::Vector3d&)> inverse_jacobian = nullptr;
};

double reparametrize_density(const std::function<double(const Eigen::Vector3d&)>& density,
                             const VectorTransform& transform, const Eigen::Vector3d& y_new);

/// |J| of the polar boost map, in the rearranged form that makes
///   mu(beta') |J| = mu(beta),  mu(b) = b^2/(1-b^2)^2,
/// exact: |J| = beta^2 (1-alpha^2)^2 / [D (1 - alpha beta cos_theta)^2] with
/// D the radicand of the boosted speed. Singular when the boost lands on the
/// particle frame (beta' = 0); requires beta > 0.
double polar_boost_jacobian(const PolarVelocity& p, double alpha);

/// Radial ball {|v| <= radius} centered at the origin.
struct BallRegion {
  double radius;
};

/// Axis-aligned box [lo, hi].
struct BoxRegion {
  Eigen::Vector3d lo;
  Eigen::Vector3d hi;
};

using Region = std::variant<BallRegion, BoxRegion>;

/// Unnormalized measure of the region under the invariant volume element
/// (a^3 d^3v classically, a^3 (1-|beta|^2)^{-2} d^3beta relativistically).
/// Balls use the closed form; boxes use adaptive quadrature at relative
/// tolerance 1e-10. Relativistic regions must close strictly inside the unit
/// ball or DivergenceError is thrown.
double region_measure(Model model, const Region& region, double scale = 1.0);

}  // namespace velspace
