#include "velspace/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "json.hpp"
#include "velspace/error.hpp"
#include "velspace/finite_difference.hpp"
#include "velspace/geometry.hpp"
#include "velspace/kinematics.hpp"
#include "velspace/measures.hpp"
#include "velspace/quadrature.hpp"
#include "velspace/sampler.hpp"

namespace velspace {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Relative error when the reference magnitude exceeds 1e-6, absolute
/// otherwise, so that errors near zeros of the reference stay meaningful.
double ref_error(double got, double want) {
  const double err = std::abs(got - want);
  return std::abs(want) > 1e-6 ? err / std::abs(want) : err;
}

/// Tracks the assertion with the worst error-to-tolerance margin. A check
/// can hold different assertions to different tolerances; the reported
/// (max_error, tol) pair is the one closest to (or past) its bound, so
/// pass == (max_error <= tol) stays truthful.
class WorstError {
 public:
  void add(double err, double tol) {
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    const double margin = err / tol;
    if (margin > worst_margin_) {
      worst_margin_ = margin;
      max_error_ = err;
      tol_ = tol;
    }
  }
  bool pass() const { return worst_margin_ <= 1.0; }
  double max_error() const { return max_error_; }
  double tol() const { return tol_; }

 private:
  double worst_margin_ = -1.0;
  double max_error_ = 0.0;
  double tol_ = 1.0;
};

/// Stream id for each check's draws; the sampler itself owns stream 0.
std::uint64_t stream_of(Check check) { return static_cast<std::uint64_t>(check) + 1; }

/// A random interior point per the draw design: beta ~ U(0, 0.99),
/// cos_theta ~ U(-1, 1), phi ~ U(0, 2pi). Consumes positions at..at+2.
PolarVelocity draw_polar(const CounterRng& rng, std::uint64_t at) {
  double beta = rng.uniform(at, 0.0, 0.99);
  if (beta <= 0.0) beta = 1e-300;  // the measure-zero draw at exactly zero
  const double cos_theta = rng.uniform(at + 1, -1.0, 1.0);
  double phi = rng.uniform(at + 2, 0.0, kTwoPi);
  if (phi >= kTwoPi) phi = 0.0;
  return PolarVelocity(Model::Relativistic, beta, cos_theta, phi);
}

/// Uniform rotation (Shoemake's quaternion method) from three uniforms at
/// positions at..at+2.
Eigen::Matrix3d draw_rotation(const CounterRng& rng, std::uint64_t at) {
  const double u1 = rng.uniform(at);
  const double a2 = rng.uniform(at + 1, 0.0, kTwoPi);
  const double a3 = rng.uniform(at + 2, 0.0, kTwoPi);
  const double s1 = std::sqrt(1.0 - u1), s2 = std::sqrt(u1);
  const Eigen::Quaterniond q(s2 * std::cos(a3), s1 * std::sin(a2), s1 * std::cos(a2),
                             s2 * std::sin(a3));
  return q.toRotationMatrix();
}

/// The polar boost map on raw coordinates, without validation or
/// canonicalization, for finite differencing: clamping would otherwise kick
/// in at the chart edges and pollute the difference quotients.
Eigen::Vector3d raw_polar_boost(const Eigen::Vector3d& q, double alpha) {
  const double beta = q[0], c = q[1], phi = q[2];
  const double sin2 = std::max(0.0, (1.0 - c) * (1.0 + c));
  const double denom = 1.0 - alpha * beta * c;
  const double shifted = beta * c - alpha;
  const double radicand = shifted * shifted + beta * beta * sin2 * (1.0 - alpha * alpha);
  const double root = std::sqrt(radicand);
  return {root / denom, root > 0.0 ? shifted / root : 1.0, phi};
}

double invariant_polar_density(const PolarVelocity& p) {
  return prior_relativistic_polar(p, 1.0).value;
}

// --- the nine checks ------------------------------------------------------

CheckResult check_jacobian(long trials, double tol, std::uint64_t seed) {
  const CounterRng rng(seed, stream_of(Check::Jacobian));
  WorstError worst;
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t at = 4 * static_cast<std::uint64_t>(t);
    const PolarVelocity p = draw_polar(rng, at);
    const double alpha = rng.uniform(at + 3, -0.99, 0.99);
    const double jac = polar_boost_jacobian(p, alpha);
    const PolarVelocity q = polar_lorentz_boost(p, alpha);
    worst.add(ref_error(invariant_polar_density(q) * jac, invariant_polar_density(p)), tol);

    // Finite-difference cross-check of |J|, restricted to draws where the
    // difference quotient itself is good to 1e-6: for small beta the
    // d(cos_theta')/d(cos_theta) entry is O(beta^2) and the quotient's
    // rounding floor (~5e-11 per derivative at step 1e-6) swamps it, and
    // steps must not cross the chart boundary or the flip at beta' = 0.
    const double shifted = p.beta * p.cos_theta - alpha;
    const double radicand =
        shifted * shifted +
        p.beta * p.beta * (1.0 - p.cos_theta * p.cos_theta) * (1.0 - alpha * alpha);
    if (p.beta > 0.1 && std::abs(p.cos_theta) < 1.0 - 1e-5 && std::sqrt(radicand) > 1e-2) {
      const Eigen::Matrix3d j = fd_jacobian(
          [alpha](const Eigen::Vector3d& x) { return raw_polar_boost(x, alpha); },
          {p.beta, p.cos_theta, p.phi});
      worst.add(ref_error(std::abs(j.determinant()), jac), 1e-6);
    }
  }
  CheckResult res;
  res.trials = trials;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

CheckResult check_prior_invariance(long trials, double tol, std::uint64_t seed) {
  const double err = detail::prior_invariance_max_error(trials, seed, invariant_polar_density);
  CheckResult res;
  res.trials = trials;
  res.max_error = err;
  res.tol = tol;
  res.pass = err <= tol;
  return res;
}

CheckResult check_metric_prior(long trials, double tol, std::uint64_t seed) {
  const CounterRng rng(seed, stream_of(Check::MetricPrior));
  WorstError worst;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
  for (long t = 0; t < trials; ++t) {
    const PolarVelocity p = draw_polar(rng, 3 * static_cast<std::uint64_t>(t));
    const CartesianVelocity v = polar_to_cartesian(p);
    const MetricTensor g = metric_relativistic_cartesian(v, 1.0);
    const double ratio = volume_element(g) / prior_relativistic_cartesian(v, 1.0).value;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    sum += ratio;
    // Interior metric must be positive definite; a zero margin means failure.
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(g.components).eigenvalues().minCoeff();
    if (!(min_eig > 0.0)) worst.add(1.0, 1e-12);
  }
  worst.add((hi - lo) / (sum / static_cast<double>(trials)), tol);

  const CartesianVelocity spot = CartesianVelocity::relativistic(0.6, 0.0, 0.0);
  worst.add(std::abs(volume_element(metric_relativistic_cartesian(spot, 1.0)) - 2.44140625),
            1e-12);
  worst.add(std::abs(prior_relativistic_cartesian(spot, 1.0).value - 2.44140625), 1e-12);

  CheckResult res;
  res.trials = trials;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

CheckResult check_isometry(long trials, double tol, std::uint64_t seed) {
  const CounterRng rng(seed, stream_of(Check::Isometry));
  WorstError worst;
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t at = 10 * static_cast<std::uint64_t>(t);
    const CartesianVelocity u = polar_to_cartesian(draw_polar(rng, at));
    const CartesianVelocity v = polar_to_cartesian(draw_polar(rng, at + 3));
    const double alpha = rng.uniform(at + 6, -0.99, 0.99);
    const Eigen::Matrix3d rot = draw_rotation(rng, at + 7);
    const double base = geodesic_distance(u, v, 1.0);
    worst.add(std::abs(geodesic_distance(lorentz_boost_3d(u, alpha),
                                         lorentz_boost_3d(v, alpha), 1.0) -
                       base),
              tol);
    worst.add(std::abs(geodesic_distance(rotate(u, rot), rotate(v, rot), 1.0) - base), 1e-12);
  }
  CheckResult res;
  res.trials = trials;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

CheckResult check_rapidity_flat(long trials, double tol, std::uint64_t seed) {
  const CounterRng rng(seed, stream_of(Check::RapidityFlat));
  WorstError worst;
  const ScalarTransform to_rapidity{[](double b) { return std::tanh(b); },
                                    [](double b) {
                                      const double t = std::tanh(b);
                                      return 1.0 - t * t;
                                    }};
  const auto density_1d = [](double beta) { return prior_relativistic_1d(beta, 1.0).value; };
  const long grid = std::max(trials, 2L);
  for (long i = 0; i < grid; ++i) {
    const double b = -5.0 + 10.0 * static_cast<double>(i) / static_cast<double>(grid - 1);
    worst.add(std::abs(reparametrize_density(density_1d, to_rapidity, b) - 1.0), tol);
  }
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t at = 2 * static_cast<std::uint64_t>(t);
    const double beta = rng.uniform(at, 0.0, 0.99);
    const double alpha = rng.uniform(at + 1, -0.99, 0.99);
    const double lhs = beta_to_rapidity(lorentz_boost_1d(beta, alpha));
    worst.add(std::abs(lhs - (beta_to_rapidity(beta) - beta_to_rapidity(alpha))), 1e-12);
  }
  CheckResult res;
  res.trials = trials;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

CheckResult check_classical_limit(long trials, double tol, std::uint64_t seed) {
  const CounterRng rng(seed, stream_of(Check::ClassicalLimit));
  WorstError worst;
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t at = 6 * static_cast<std::uint64_t>(t);

    // Small speeds: metric -> a^2 I, prior -> a, geodesic -> a * beta.
    double beta = 1e-3 * rng.uniform(at);
    if (beta <= 0.0) beta = 1e-9;
    const double cos_theta = rng.uniform(at + 1, -1.0, 1.0);
    double phi = rng.uniform(at + 2, 0.0, kTwoPi);
    if (phi >= kTwoPi) phi = 0.0;
    const CartesianVelocity v =
        polar_to_cartesian(PolarVelocity(Model::Relativistic, beta, cos_theta, phi));
    const Eigen::Matrix3d g = metric_relativistic_cartesian(v, 1.0).components;
    worst.add((g - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), tol);
    worst.add(std::abs(prior_relativistic_cartesian(v, 1.0).value - 1.0), tol);
    const CartesianVelocity origin = CartesianVelocity::relativistic(0.0, 0.0, 0.0);
    worst.add(std::abs(geodesic_distance(origin, v, 1.0) / beta - 1.0), tol);

    // Explicit second-order bound |mu/a - 1| <= 2.1 beta^2 up to beta = 0.1.
    // The draw floor keeps the bound above floating-point noise.
    const double beta2 = 0.1 * std::max(rng.uniform(at + 3), 1e-5);
    const double c2 = rng.uniform(at + 4, -1.0, 1.0);
    double phi2 = rng.uniform(at + 5, 0.0, kTwoPi);
    if (phi2 >= kTwoPi) phi2 = 0.0;
    const CartesianVelocity w =
        polar_to_cartesian(PolarVelocity(Model::Relativistic, beta2, c2, phi2));
    const double dev = std::abs(prior_relativistic_cartesian(w, 1.0).value - 1.0);
    worst.add(dev / (2.1 * beta2 * beta2), 1.0);
  }
  CheckResult res;
  res.trials = trials;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

CheckResult check_nonfactorization(double tol) {
  WorstError worst;
  const double joint =
      prior_relativistic_cartesian(CartesianVelocity::relativistic(0.5, 0.5, 0.0), 1.0).value;
  const double product = prior_relativistic_1d(0.5, 1.0).value *
                         prior_relativistic_1d(0.5, 1.0).value *
                         prior_relativistic_1d(0.0, 1.0).value;
  worst.add(ref_error(joint, 4.0), tol);
  worst.add(ref_error(product, 16.0 / 9.0), tol);
  if (!(joint > product)) worst.add(1.0, tol);  // strict inequality is the witness

  // Classically the joint constant factorizes exactly (a_3d = a_1d^3).
  const double joint_classical =
      prior_classical(CartesianVelocity::classical(0.5, 0.5, 0.0), 8.0).value;
  const double product_classical =
      prior_classical(CartesianVelocity::classical(0.5, 0.0, 0.0), 2.0).value *
      prior_classical(CartesianVelocity::classical(0.5, 0.0, 0.0), 2.0).value *
      prior_classical(CartesianVelocity::classical(0.0, 0.0, 0.0), 2.0).value;
  worst.add(ref_error(product_classical, joint_classical), tol);

  CheckResult res;
  res.trials = 1;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

CheckResult check_mc_invariance(double tol, std::uint64_t seed) {
  constexpr long kSamples = 100000;
  constexpr double kBetaMax = 0.9;
  const SampleBatch batch = sample_invariant_ball(kBetaMax, kSamples, seed);
  const double total_volume = ball_volume(kBetaMax, 1.0);
  const double n = static_cast<double>(kSamples);
  WorstError worst;

  // Radial occupancy against the closed-form ball volumes, in binomial
  // standard errors.
  const double thresholds[] = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.85};
  for (const double b0 : thresholds) {
    long count = 0;
    for (const CartesianVelocity& v : batch.points) count += v.speed() <= b0;
    const double p = ball_volume(b0, 1.0) / total_volume;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    worst.add(std::abs(static_cast<double>(count) / n - p) / sigma, tol);
  }

  // Isotropy: the mean direction of n uniform directions has norm
  // O(1/sqrt(n)); report it in those units.
  Eigen::Vector3d mean_dir = Eigen::Vector3d::Zero();
  for (const CartesianVelocity& v : batch.points) {
    const double speed = v.speed();
    if (speed > 0.0) mean_dir += v.components / speed;
  }
  worst.add((mean_dir / n).norm() * std::sqrt(n), tol);

  // Boost pushforward: T = boost by alpha. The sample set maps bijectively,
  // so region counts transported through T must match exactly; and the count
  // of boosted samples in a fixed region matches the pulled-back measure.
  const double alpha = 0.3;
  const Eigen::Vector3d lo(0.0, -0.3, -0.2);
  const Eigen::Vector3d hi(0.4, 0.1, 0.2);
  const auto inside = [&](const Eigen::Vector3d& x) {
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  };
  long count_original = 0, count_pulled_back = 0, count_boosted = 0;
  for (const CartesianVelocity& v : batch.points) {
    const CartesianVelocity boosted = lorentz_boost_3d(v, alpha);
    count_original += inside(v.components);
    count_boosted += inside(boosted.components);
    count_pulled_back += inside(lorentz_boost_3d(boosted, -alpha).components);
  }
  worst.add(static_cast<double>(std::labs(count_pulled_back - count_original)), 0.5);

  // Pulled-back measure of the fixed box, by change of variables with a
  // finite-difference Jacobian so the expected value does not assume the
  // invariance under test.
  const auto pulled_density = [alpha](const Eigen::Vector3d& y) {
    const auto inverse_boost_map = [alpha](const Eigen::Vector3d& z) {
      return lorentz_boost_3d(CartesianVelocity(Model::Relativistic, z), -alpha).components;
    };
    const Eigen::Vector3d x = inverse_boost_map(y);
    const double one_minus = 1.0 - x.squaredNorm();
    const double det = std::abs(fd_jacobian(inverse_boost_map, y).determinant());
    return det / (one_minus * one_minus);
  };
  const double pulled_measure = integrate_box(pulled_density, lo, hi, 1e-8);
  const double p_box = pulled_measure / total_volume;
  const double sigma_box = std::sqrt(p_box * (1.0 - p_box) / n);
  worst.add(std::abs(static_cast<double>(count_boosted) / n - p_box) / sigma_box, tol);

  CheckResult res;
  res.trials = kSamples;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

CheckResult check_volume_divergence(long trials, double tol) {
  WorstError worst;
  // Log-spaced approach to the light sphere: beta_i = 1 - 10^{-e_i}.
  const long grid = std::clamp(trials, 2L, 10000L);
  double previous = -1.0;
  long violations = 0;
  for (long i = 0; i < grid; ++i) {
    const double exponent =
        0.3 + (7.0 - 0.3) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double volume = ball_volume(1.0 - std::pow(10.0, -exponent), 1.0);
    if (!(volume > previous)) ++violations;
    previous = volume;
  }
  if (violations > 0) worst.add(1.0 + static_cast<double>(violations), tol);
  // Witness of unbounded growth, reported as the ratio still missing.
  worst.add(1e7 / ball_volume(1.0 - 1e-7, 1.0), tol);

  CheckResult res;
  res.trials = grid;
  res.pass = worst.pass();
  res.max_error = worst.max_error();
  res.tol = worst.tol();
  return res;
}

double default_tolerance(Check check) {
  switch (check) {
    case Check::Jacobian: return 1e-10;
    case Check::PriorInvariance: return 1e-10;
    case Check::MetricPrior: return 1e-12;
    case Check::Isometry: return 1e-9;
    case Check::RapidityFlat: return 1e-10;
    case Check::ClassicalLimit: return 1e-5;
    case Check::Nonfactorization: return 1e-12;
    case Check::McInvariance: return 4.0;   // binomial standard errors
    case Check::VolumeDivergence: return 1.0;  // fraction of the 1e7 witness
  }
  return 1e-10;
}

CheckResult run_one(Check check, const CheckConfig& config) {
  const double tol = config.tol.value_or(default_tolerance(check));
  switch (check) {
    case Check::Jacobian: return check_jacobian(config.trials, tol, config.seed);
    case Check::PriorInvariance: return check_prior_invariance(config.trials, tol, config.seed);
    case Check::MetricPrior: return check_metric_prior(config.trials, tol, config.seed);
    case Check::Isometry: return check_isometry(config.trials, tol, config.seed);
    case Check::RapidityFlat: return check_rapidity_flat(config.trials, tol, config.seed);
    case Check::ClassicalLimit: return check_classical_limit(config.trials, tol, config.seed);
    case Check::Nonfactorization: return check_nonfactorization(tol);
    case Check::McInvariance: return check_mc_invariance(tol, config.seed);
    case Check::VolumeDivergence: return check_volume_divergence(config.trials, tol);
  }
  throw DomainError("run_checks: unknown check");
}

}  // namespace

std::string_view to_string(Check check) {
  switch (check) {
    case Check::Jacobian: return "jacobian";
    case Check::PriorInvariance: return "prior_invariance";
    case Check::MetricPrior: return "metric_prior";
    case Check::Isometry: return "isometry";
    case Check::RapidityFlat: return "rapidity_flat";
    case Check::ClassicalLimit: return "classical_limit";
    case Check::Nonfactorization: return "nonfactorization";
    case Check::McInvariance: return "mc_invariance";
    case Check::VolumeDivergence: return "volume_divergence";
  }
  return "unknown";
}

std::optional<Check> check_from_string(std::string_view name) {
  for (const Check check : kAllChecks) {
    if (to_string(check) == name) return check;
  }
  return std::nullopt;
}

VerificationReport run_checks(const CheckConfig& config) {
  if (config.trials < 1) throw DomainError("run_checks: trials must be at least 1");
  if (config.tol && !(*config.tol > 0.0)) {
    throw DomainError("run_checks: tol must be positive");
  }
  VerificationReport report;
  report.overall = true;
  for (const Check check : kAllChecks) {
    if (std::find(config.suite.begin(), config.suite.end(), check) == config.suite.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    CheckResult result;
    try {
      result = run_one(check, config);
    } catch (const std::exception& e) {
      result.pass = false;
      result.error = e.what();
      result.tol = config.tol.value_or(default_tolerance(check));
    }
    result.check = to_string(check);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.overall = report.overall && result.pass;
    report.checks.push_back(std::move(result));
  }
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& result : report.checks) {
    nlohmann::ordered_json entry{{"check", result.check},
                                 {"pass", result.pass},
                                 {"trials", result.trials},
                                 {"max_error", result.max_error},
                                 {"tol", result.tol},
                                 {"seconds", result.seconds}};
    if (!result.error.empty()) entry["error"] = result.error;
    checks.push_back(std::move(entry));
  }
  const nlohmann::ordered_json root{{"checks", std::move(checks)}, {"overall", report.overall}};
  return root.dump(2);
}

namespace detail {

double prior_invariance_max_error(
    long trials, std::uint64_t seed,
    const std::function<double(const PolarVelocity&)>& density) {
  const CounterRng rng(seed, stream_of(Check::PriorInvariance));
  double worst = 0.0;
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t at = 4 * static_cast<std::uint64_t>(t);
    const PolarVelocity p = draw_polar(rng, at);
    const double alpha = rng.uniform(at + 3, -0.99, 0.99);
    const PolarVelocity q = polar_lorentz_boost(p, alpha);
    const double jac = polar_boost_jacobian(p, alpha);
    worst = std::max(worst, ref_error(density(q) * jac, density(p)));
  }
  return worst;
}

}  // namespace detail

}  // namespace velspace
