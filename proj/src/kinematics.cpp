#include "velspace/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace velspace {

namespace {

void require_finite_scalar(double x, const char* name, const char* where) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(where) + ": " + name + " is not finite");
  }
}

void require_subluminal(double alpha, const char* where) {
  if (!std::isfinite(alpha) || std::abs(alpha) >= 1.0) {
    throw DomainError(std::string(where) + ": superluminal or lightlike: alpha = " +
                      std::to_string(alpha));
  }
}

// a - b with the rounding error recovered (Knuth two-sum).
struct Split {
  double value;
  double err;
};

Split two_diff(double a, double b) {
  const double s = a - b;
  const double z = s - a;
  return {s, (a - (s - z)) - (b + z)};
}

// (beta - alpha) / (1 - alpha*beta) with numerator, denominator and quotient
// each corrected for rounding, leaving at most ~0.5 ulp in the result.
double mobius_boost(double beta, double alpha) {
  const Split num = two_diff(beta, alpha);
  const double p = alpha * beta;
  const double p_err = std::fma(alpha, beta, -p);
  const Split den = two_diff(1.0, p);
  const double d_err = den.err - p_err;

  const double q = num.value / den.value;
  const double residual = std::fma(-q, den.value, num.value) + num.err - q * d_err;
  const double r = q + residual / den.value;
  // The map sends (-1, 1) x (-1, 1) into (-1, 1); a result on the sphere can
  // only be the correct rounding of a value just inside it. Keep containment.
  if (std::abs(r) >= 1.0) return std::copysign(std::nextafter(1.0, 0.0), r);
  return r;
}

}  // namespace

Boost::Boost(Model model, double alpha, std::optional<Eigen::Matrix3d> rotation)
    : model(model), alpha(alpha), rotation(std::move(rotation)) {
  require_finite_scalar(alpha, "alpha", "Boost");
  if (model == Model::Relativistic && std::abs(alpha) >= 1.0) {
    throw DomainError("Boost: superluminal or lightlike: alpha = " + std::to_string(alpha));
  }
  if (this->rotation && !is_rotation(*this->rotation)) {
    throw DomainError("Boost: rotation is not orthogonal with det +1 (tol 1e-12)");
  }
}

bool is_rotation(const Eigen::Matrix3d& r, double tol) {
  if (!r.allFinite()) return false;
  const double ortho = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

CartesianVelocity rotate(const CartesianVelocity& v, const Eigen::Matrix3d& r) {
  if (!is_rotation(r)) {
    throw DomainError("rotate: matrix is not orthogonal with det +1 (tol 1e-12)");
  }
  return {v.model, r * v.components};
}

double galilean_boost_1d(double v, double v_r) {
  require_finite_scalar(v, "v", "galilean_boost_1d");
  require_finite_scalar(v_r, "v_r", "galilean_boost_1d");
  return v - v_r;
}

CartesianVelocity galilean_boost_3d(const CartesianVelocity& v, const Boost& boost) {
  if (v.model != Model::Classical || boost.model != Model::Classical) {
    throw DomainError("galilean_boost_3d: requires classical velocity and boost");
  }
  const Eigen::Vector3d shifted = v.components - Eigen::Vector3d(boost.alpha, 0.0, 0.0);
  return {Model::Classical, boost.rotation ? (*boost.rotation * shifted).eval() : shifted};
}

double lorentz_boost_1d(double beta, double alpha) {
  require_subluminal(beta, "lorentz_boost_1d(beta)");
  require_subluminal(alpha, "lorentz_boost_1d(alpha)");
  return mobius_boost(beta, alpha);
}

CartesianVelocity lorentz_boost_3d(const CartesianVelocity& v, double alpha) {
  if (v.model != Model::Relativistic) {
    throw DomainError("lorentz_boost_3d: requires a relativistic velocity");
  }
  require_subluminal(alpha, "lorentz_boost_3d");
  const double denom = 1.0 - alpha * v.components.x();
  const double transverse = std::sqrt((1.0 - alpha) * (1.0 + alpha)) / denom;
  Eigen::Vector3d out{mobius_boost(v.components.x(), alpha), v.components.y() * transverse,
                      v.components.z() * transverse};
  // The exact result satisfies |out| < 1; undo the few-ulp overshoot that
  // componentwise rounding can produce for inputs within ~1e-15 of the sphere.
  // The loop guards against the rescale itself rounding back up.
  for (double n2 = out.squaredNorm(); n2 >= 1.0; n2 = out.squaredNorm()) {
    out *= std::sqrt((1.0 - 4e-16) / n2);
  }
  return {Model::Relativistic, out};
}

PolarVelocity polar_lorentz_boost(const PolarVelocity& p, double alpha) {
  if (p.model != Model::Relativistic) {
    throw DomainError("polar_lorentz_boost: requires a relativistic velocity");
  }
  require_subluminal(alpha, "polar_lorentz_boost");

  const double radial = p.beta * p.cos_theta - alpha;
  const double sin_theta = p.sin_theta();
  const double arg =
      radial * radial + p.beta * p.beta * sin_theta * sin_theta * (1.0 - alpha * alpha);
  if (arg == 0.0) return {Model::Relativistic, 0.0, 1.0, 0.0};

  const double root = std::sqrt(arg);
  const double beta_prime = root / (1.0 - alpha * p.beta * p.cos_theta);
  const double cos_theta_prime = std::clamp(radial / root, -1.0, 1.0);
  return {Model::Relativistic, std::min(beta_prime, std::nextafter(1.0, 0.0)),
          cos_theta_prime, p.phi};
}

double compose_boosts(double alpha1, double alpha2) {
  require_subluminal(alpha1, "compose_boosts(alpha1)");
  require_subluminal(alpha2, "compose_boosts(alpha2)");
  return mobius_boost(alpha1, -alpha2);
}

double inverse_boost(double alpha) {
  require_subluminal(alpha, "inverse_boost");
  return -alpha;
}

}  // namespace velspace
