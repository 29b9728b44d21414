#include "velspace/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace velspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double x, const char* name, const char* where) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(where) + ": component " + name + " is not finite");
  }
}

}  // namespace

const char* to_string(Model model) {
  return model == Model::Classical ? "classical" : "relativistic";
}

CartesianVelocity::CartesianVelocity(Model model, const Eigen::Vector3d& components)
    : model(model), components(components) {
  static const char* names[3] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    require_finite(components[i], names[i], "CartesianVelocity");
  }
  if (model == Model::Relativistic && components.squaredNorm() >= 1.0) {
    throw DomainError("CartesianVelocity: superluminal or lightlike: |beta|^2 = " +
                      std::to_string(components.squaredNorm()) + " >= 1");
  }
}

PolarVelocity::PolarVelocity(Model model, double beta, double cos_theta, double phi)
    : model(model), beta(beta), cos_theta(cos_theta), phi(phi) {
  require_finite(beta, "beta", "PolarVelocity");
  require_finite(cos_theta, "cos_theta", "PolarVelocity");
  require_finite(phi, "phi", "PolarVelocity");
  if (beta < 0.0) throw DomainError("PolarVelocity: beta = " + std::to_string(beta) + " < 0");
  if (model == Model::Relativistic && beta >= 1.0) {
    throw DomainError("PolarVelocity: superluminal or lightlike: beta = " +
                      std::to_string(beta) + " >= 1");
  }
  if (std::abs(cos_theta) > 1.0) {
    throw DomainError("PolarVelocity: cos_theta = " + std::to_string(cos_theta) +
                      " outside [-1, 1]");
  }
  if (phi < 0.0 || phi >= kTwoPi) {
    throw DomainError("PolarVelocity: phi = " + std::to_string(phi) + " outside [0, 2*pi)");
  }
  // Degenerate chart points have one canonical representative: the angles
  // are arbitrary at beta = 0 and phi is arbitrary on the polar axis.
  if (beta == 0.0) this->cos_theta = 1.0;
  if (beta == 0.0 || std::abs(this->cos_theta) == 1.0) this->phi = 0.0;
}

Rapidity::Rapidity(double value) : value(value) {
  require_finite(value, "value", "Rapidity");
}

PolarVelocity cartesian_to_polar(const CartesianVelocity& v) {
  const double beta = v.speed();
  if (beta == 0.0) return {v.model, 0.0, 1.0, 0.0};

  const double cos_theta = v.components.x() / beta;
  const double transverse = std::hypot(v.components.y(), v.components.z());
  if (transverse == 0.0) {
    // On the polar axis; phi is arbitrary, pick the canonical 0.
    return {v.model, beta, cos_theta > 0.0 ? 1.0 : -1.0, 0.0};
  }
  double phi = std::atan2(v.components.y(), v.components.z());
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;  // rounding of tiny negatives
  return {v.model, beta, std::clamp(cos_theta, -1.0, 1.0), phi};
}

CartesianVelocity polar_to_cartesian(const PolarVelocity& p) {
  const double s = p.sin_theta();
  return {p.model, {p.beta * p.cos_theta, p.beta * s * std::sin(p.phi),
                    p.beta * s * std::cos(p.phi)}};
}

double beta_to_rapidity(double beta) {
  if (!std::isfinite(beta) || std::abs(beta) >= 1.0) {
    throw DomainError("beta_to_rapidity: superluminal or lightlike: beta = " +
                      std::to_string(beta));
  }
  return 0.5 * (std::log1p(beta) - std::log1p(-beta));
}

double rapidity_to_beta(double b) {
  if (!std::isfinite(b)) throw DomainError("rapidity_to_beta: b is not finite");
  return std::tanh(b);
}

}  // namespace velspace
