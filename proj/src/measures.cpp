#include "velspace/measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "velspace/finite_difference.hpp"
#include "velspace/geometry.hpp"
#include "velspace/quadrature.hpp"

namespace velspace {

namespace {

void require_scale(double scale, const char* where) {
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw DomainError(std::string(where) + ": scale must be positive, got " +
                      std::to_string(scale));
  }
}

}  // namespace

const char* to_string(Parametrization p) {
  switch (p) {
    case Parametrization::Cartesian1D: return "cartesian1d";
    case Parametrization::Cartesian3D: return "cartesian3d";
    case Parametrization::Polar: return "polar";
    case Parametrization::Rapidity: return "rapidity";
    case Parametrization::Energy: return "energy";
  }
  return "?";
}

EnergyPoint::EnergyPoint(double energy, double rest_energy)
    : energy(energy), rest_energy(rest_energy) {
  if (!std::isfinite(energy) || !std::isfinite(rest_energy) || rest_energy <= 0.0) {
    throw DomainError("EnergyPoint: rest_energy must be positive and finite");
  }
  if (energy < rest_energy) {
    throw DomainError("EnergyPoint: energy " + std::to_string(energy) +
                      " below rest energy " + std::to_string(rest_energy));
  }
}

DensityValue prior_classical(const CartesianVelocity& v, double scale) {
  require_scale(scale, "prior_classical");
  if (v.model != Model::Classical) {
    throw DomainError("prior_classical: requires a classical velocity");
  }
  return {scale, Parametrization::Cartesian3D, scale};
}

DensityValue prior_relativistic_1d(double beta, double scale) {
  require_scale(scale, "prior_relativistic_1d");
  if (!std::isfinite(beta) || std::abs(beta) >= 1.0) {
    throw DomainError("prior_relativistic_1d: superluminal or lightlike: beta = " +
                      std::to_string(beta));
  }
  return {scale / ((1.0 - beta) * (1.0 + beta)), Parametrization::Cartesian1D, scale};
}

DensityValue prior_relativistic_polar(const PolarVelocity& p, double scale) {
  require_scale(scale, "prior_relativistic_polar");
  if (p.model != Model::Relativistic) {
    throw DomainError("prior_relativistic_polar: requires a relativistic velocity");
  }
  const double one_minus_b2 = (1.0 - p.beta) * (1.0 + p.beta);
  return {scale * p.beta * p.beta / (one_minus_b2 * one_minus_b2), Parametrization::Polar,
          scale};
}

DensityValue prior_relativistic_cartesian(const CartesianVelocity& v, double scale) {
  require_scale(scale, "prior_relativistic_cartesian");
  if (v.model != Model::Relativistic) {
    throw DomainError("prior_relativistic_cartesian: requires a relativistic velocity");
  }
  const double one_minus_b2 = 1.0 - v.speed_squared();
  return {scale / (one_minus_b2 * one_minus_b2), Parametrization::Cartesian3D, scale};
}

DensityValue prior_relativistic_rapidity(double b, double scale) {
  require_scale(scale, "prior_relativistic_rapidity");
  if (!std::isfinite(b)) throw DomainError("prior_relativistic_rapidity: b is not finite");
  return {scale, Parametrization::Rapidity, scale};
}

DensityValue prior_relativistic_energy(const EnergyPoint& point, double scale) {
  require_scale(scale, "prior_relativistic_energy");
  if (point.energy <= point.rest_energy) {
    throw DomainError("prior_relativistic_energy: density diverges at E = E0");
  }
  const double e = point.energy, e0 = point.rest_energy;
  return {scale / std::sqrt((e - e0) * (e + e0)), Parametrization::Energy, scale};
}

double reparametrize_density(const std::function<double(double)>& density,
                             const ScalarTransform& transform, double y_new) {
  if (!density || !transform.inverse) {
    throw DomainError("reparametrize_density: density and inverse are required");
  }
  const double x = transform.inverse(y_new);
  const double jac = transform.inverse_derivative ? transform.inverse_derivative(y_new)
                                                  : central_difference(transform.inverse, y_new);
  if (!std::isfinite(jac)) throw NumericError("reparametrize_density: non-finite Jacobian");
  if (std::abs(jac) < 1e-300) throw NumericError("reparametrize_density: singular Jacobian");
  return density(x) * std::abs(jac);
}

double reparametrize_density(const std::function<double(const Eigen::Vector3d&)>& density,
                             const VectorTransform& transform, const Eigen::Vector3d& y_new) {
  if (!density || !transform.inverse) {
    throw DomainError("reparametrize_density: density and inverse are required");
  }
  const Eigen::Vector3d x = transform.inverse(y_new);
  const Eigen::Matrix3d jac = transform.inverse_jacobian
                                  ? transform.inverse_jacobian(y_new)
                                  : fd_jacobian(transform.inverse, y_new);
  const double det = jac.determinant();
  if (!std::isfinite(det)) throw NumericError("reparametrize_density: non-finite Jacobian");
  if (std::abs(det) < 1e-300) throw NumericError("reparametrize_density: singular Jacobian");
  return density(x) * std::abs(det);
}

double polar_boost_jacobian(const PolarVelocity& p, double alpha) {
  if (p.model != Model::Relativistic) {
    throw DomainError("polar_boost_jacobian: requires a relativistic velocity");
  }
  if (!std::isfinite(alpha) || std::abs(alpha) >= 1.0) {
    throw DomainError("polar_boost_jacobian: superluminal or lightlike: alpha = " +
                      std::to_string(alpha));
  }
  if (p.beta <= 0.0) {
    throw DomainError("polar_boost_jacobian: requires beta > 0");
  }
  const double radial = p.beta * p.cos_theta - alpha;
  const double sin_theta = p.sin_theta();
  const double radicand =
      radial * radial + p.beta * p.beta * sin_theta * sin_theta * (1.0 - alpha * alpha);
  if (radicand == 0.0) {
    throw SingularPointError("polar_boost_jacobian: boost into the particle frame");
  }
  const double denom = 1.0 - alpha * p.beta * p.cos_theta;
  const double one_minus_a2 = (1.0 - alpha) * (1.0 + alpha);
  return p.beta * p.beta * one_minus_a2 * one_minus_a2 / (radicand * denom * denom);
}

namespace {

double ball_measure(Model model, double radius, double scale) {
  if (!std::isfinite(radius) || radius < 0.0) {
    throw DomainError("region_measure: ball radius must be nonnegative");
  }
  if (radius == 0.0) return 0.0;
  if (model == Model::Classical) {
    return scale * scale * scale * (4.0 / 3.0) * std::numbers::pi * radius * radius * radius;
  }
  return ball_volume(radius, scale);  // throws DivergenceError at radius >= 1
}

double box_measure(Model model, const BoxRegion& box, double scale) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(box.lo[i]) || !std::isfinite(box.hi[i]) || box.lo[i] > box.hi[i]) {
      throw DomainError("region_measure: box bounds must be finite with lo <= hi");
    }
  }
  const Eigen::Vector3d extent = box.hi - box.lo;
  if (extent.minCoeff() == 0.0) return 0.0;
  const double a3 = scale * scale * scale;
  if (model == Model::Classical) return a3 * extent.prod();

  const Eigen::Vector3d farthest = box.lo.cwiseAbs().cwiseMax(box.hi.cwiseAbs());
  if (farthest.squaredNorm() >= 1.0) {
    throw DivergenceError("region_measure: box touches the light sphere |beta| = 1");
  }
  return a3 * integrate_box(
                  [](const Eigen::Vector3d& b) {
                    const double d = 1.0 - b.squaredNorm();
                    return 1.0 / (d * d);
                  },
                  box.lo, box.hi, 1e-10);
}

}  // namespace

double region_measure(Model model, const Region& region, double scale) {
  require_scale(scale, "region_measure");
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    return ball_measure(model, ball->radius, scale);
  }
  return box_measure(model, std::get<BoxRegion>(region), scale);
}

}  // namespace velspace
