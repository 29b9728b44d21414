#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "velspace/error.hpp"
#include "velspace/finite_difference.hpp"
#include "velspace/kinematics.hpp"
#include "velspace/measures.hpp"
#include "velspace/velocity.hpp"

using namespace velspace;

TEST_CASE("classical prior is the constant a") {
  const CounterRng rng(31);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const CartesianVelocity v = CartesianVelocity::classical(
        rng.uniform(3 * t, -10, 10), rng.uniform(3 * t + 1, -10, 10),
        rng.uniform(3 * t + 2, -10, 10));
    const DensityValue d = prior_classical(v, 2.5);
    CHECK(d.value == 2.5);
    CHECK(d.scale == 2.5);
    CHECK(d.parametrization == Parametrization::Cartesian3D);
  }
  CHECK_THROWS_AS(prior_classical(CartesianVelocity::relativistic(0.1, 0, 0), 1.0), DomainError);
  CHECK_THROWS_AS(prior_classical(CartesianVelocity::classical(1, 0, 0), 0.0), DomainError);
  CHECK_THROWS_AS(prior_classical(CartesianVelocity::classical(1, 0, 0), -2.0), DomainError);
}

TEST_CASE("1D relativistic prior a/(1 - beta^2)") {
  CHECK(prior_relativistic_1d(0.0, 1.0).value == 1.0);
  CHECK(prior_relativistic_1d(0.5, 3.0).value == 4.0);
  CHECK(prior_relativistic_1d(0.6, 1.0).value == doctest::Approx(1.5625).epsilon(1e-15));
  CHECK(prior_relativistic_1d(-0.6, 1.0).value ==
        prior_relativistic_1d(0.6, 1.0).value);  // even in beta
  CHECK(prior_relativistic_1d(0.5, 1.0).parametrization == Parametrization::Cartesian1D);
  CHECK_THROWS_AS(prior_relativistic_1d(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(prior_relativistic_1d(-1.2, 1.0), DomainError);
}

TEST_CASE("polar relativistic prior a beta^2/(1 - beta^2)^2") {
  CHECK(prior_relativistic_polar(PolarVelocity(Model::Relativistic, 0.0, 1.0, 0.0), 1.0).value ==
        0.0);  // vanishing radial factor
  CHECK(prior_relativistic_polar(PolarVelocity(Model::Relativistic, 0.5, 0.2, 1.0), 3.0).value ==
        doctest::Approx(1.3333333333333333).epsilon(1e-15));
  // Depends on beta only, not on direction.
  const double at_a = prior_relativistic_polar(PolarVelocity(Model::Relativistic, 0.7, -0.4, 2.0), 1.0).value;
  const double at_b = prior_relativistic_polar(PolarVelocity(Model::Relativistic, 0.7, 0.9, 5.0), 1.0).value;
  CHECK(at_a == at_b);
  CHECK_THROWS_AS(prior_relativistic_polar(PolarVelocity(Model::Classical, 0.5, 1.0, 0.0), 1.0),
                  DomainError);
}

TEST_CASE("cartesian relativistic prior a/(1 - |beta|^2)^2: frozen values") {
  CHECK(prior_relativistic_cartesian(CartesianVelocity::relativistic(0, 0, 0), 1.0).value == 1.0);
  CHECK(prior_relativistic_cartesian(CartesianVelocity::relativistic(0.6, 0, 0), 1.0).value ==
        2.44140625);
  CHECK(prior_relativistic_cartesian(CartesianVelocity::relativistic(0.5, 0.5, 0), 1.0).value ==
        4.0);
  // Linear in the scale.
  CHECK(prior_relativistic_cartesian(CartesianVelocity::relativistic(0.6, 0, 0), 2.0).value ==
        2.0 * 2.44140625);
}

TEST_CASE("rapidity prior is flat") {
  for (const double b : {-5.0, -1.0, 0.0, 0.3, 5.0}) {
    CHECK(prior_relativistic_rapidity(b, 1.5).value == 1.5);
  }
  CHECK(prior_relativistic_rapidity(0.0, 1.0).parametrization == Parametrization::Rapidity);
  CHECK_THROWS_AS(prior_relativistic_rapidity(INFINITY, 1.0), DomainError);
}

TEST_CASE("energy prior a/sqrt(E^2 - E0^2)") {
  const EnergyPoint p(2.0, 1.0);
  CHECK(p.beta() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(prior_relativistic_energy(p, 1.0).value ==
        doctest::Approx(0.5773502691896258).epsilon(1e-15));
  CHECK_THROWS_AS(EnergyPoint(0.5, 1.0), DomainError);   // below rest energy
  CHECK_THROWS_AS(EnergyPoint(1.0, -1.0), DomainError);  // invalid rest energy
  CHECK_THROWS_AS(prior_relativistic_energy(EnergyPoint(1.0, 1.0), 1.0),
                  DomainError);  // divergent at rest
}

TEST_CASE("scalar reparametrization: conservation of probabilities") {
  const auto density = [](double beta) { return prior_relativistic_1d(beta, 1.0).value; };

  // Identity transform leaves any density unchanged.
  const ScalarTransform identity{[](double y) { return y; }, [](double) { return 1.0; }};
  CHECK(reparametrize_density(density, identity, 0.37) == density(0.37));

  // Pushforward to rapidity is the constant 1 (analytic Jacobian 1 - beta^2).
  const ScalarTransform to_rapidity{[](double b) { return std::tanh(b); },
                                    [](double b) {
                                      const double t = std::tanh(b);
                                      return 1.0 - t * t;
                                    }};
  for (double b = -5.0; b <= 5.0; b += 0.5) {
    CHECK(reparametrize_density(density, to_rapidity, b) == doctest::Approx(1.0).epsilon(1e-13));
  }

  // Same pushforward with the finite-difference fallback Jacobian.
  const ScalarTransform to_rapidity_fd{[](double b) { return std::tanh(b); }};
  CHECK(reparametrize_density(density, to_rapidity_fd, 0.8) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Pushforward to energy at E = 2 E0 matches the closed form a/sqrt(E^2-E0^2).
  const ScalarTransform to_energy{
      [](double e) { return std::sqrt((e - 1.0) * (e + 1.0)) / e; },
      [](double e) {
        const double b = std::sqrt((e - 1.0) * (e + 1.0)) / e;
        return 1.0 / (e * e * e * b);  // d beta / dE = 1/(E^3 beta)
      }};
  CHECK(reparametrize_density(density, to_energy, 2.0) ==
        doctest::Approx(0.5773502691896258).epsilon(1e-13));

  CHECK_THROWS_AS(
      reparametrize_density(density, ScalarTransform{[](double) { return 0.0; },
                                                     [](double) { return 0.0; }},
                            1.0),
      NumericError);  // singular Jacobian
}

TEST_CASE("vector reparametrization through a boost preserves the invariant density") {
  const double alpha = 0.4;
  const auto density = [](const Eigen::Vector3d& b) {
    return prior_relativistic_cartesian(CartesianVelocity(Model::Relativistic, b), 1.0).value;
  };
  const VectorTransform inverse_boost_map{[alpha](const Eigen::Vector3d& y) {
    return lorentz_boost_3d(CartesianVelocity(Model::Relativistic, y), -alpha).components;
  }};
  const CounterRng rng(32);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Eigen::Vector3d y = polar_to_cartesian(testing::random_polar(rng, 3 * t, 0.0, 0.8)).components;
    const double pushed = reparametrize_density(density, inverse_boost_map, y);
    // Finite-difference Jacobian limits the agreement, not the identity.
    CHECK(testing::rel_err(pushed, density(y)) <= 1e-6);
  }
}

TEST_CASE("polar-to-cartesian chart carries Jacobian beta^2") {
  const CounterRng rng(33);
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const PolarVelocity p = testing::random_polar(rng, 3 * t);
    const double cart =
        prior_relativistic_cartesian(polar_to_cartesian(p), 1.0).value * p.beta * p.beta;
    const double polar = prior_relativistic_polar(p, 1.0).value;
    CHECK(testing::rel_err(cart, polar) <= 1e-12);
  }
}

TEST_CASE("polar boost Jacobian: frozen values and the 1D radial factor") {
  // alpha = 0 is the identity map.
  CHECK(polar_boost_jacobian(PolarVelocity(Model::Relativistic, 0.37, -0.2, 1.0), 0.0) == 1.0);

  CHECK(polar_boost_jacobian(PolarVelocity(Model::Relativistic, 0.6, 0.5, 0.0), 0.3) ==
        doctest::Approx(1.4652014652014652).epsilon(1e-14));

  // On-axis: the full Jacobian is mu(beta)/mu(beta') = 100/9, while the
  // radial partial d(beta')/d(beta) alone is the 1D factor
  // (1 - alpha^2)/(1 - alpha beta)^2 = 25/12.
  const double on_axis = polar_boost_jacobian(PolarVelocity(Model::Relativistic, 0.8, 1.0, 0.0), 0.5);
  CHECK(on_axis == doctest::Approx(100.0 / 9.0).epsilon(1e-14));
  const double radial_fd = central_difference(
      [](double beta) { return lorentz_boost_1d(beta, 0.5); }, 0.8);
  CHECK(radial_fd == doctest::Approx(25.0 / 12.0).epsilon(1e-9));

  CHECK_THROWS_AS(polar_boost_jacobian(PolarVelocity(Model::Relativistic, 0.0, 1.0, 0.0), 0.3),
                  DomainError);  // beta > 0 required
  CHECK_THROWS_AS(polar_boost_jacobian(PolarVelocity(Model::Relativistic, 0.3, 1.0, 0.0), 0.3),
                  SingularPointError);  // boost into the particle frame
  CHECK_THROWS_AS(polar_boost_jacobian(PolarVelocity(Model::Relativistic, 0.3, 1.0, 0.0), 1.0),
                  DomainError);
}

TEST_CASE("polar boost Jacobian agrees with finite differences off the degenerate set") {
  const CounterRng rng(34);
  const auto raw_boost = [](const Eigen::Vector3d& q, double alpha) -> Eigen::Vector3d {
    const double beta = q[0], c = q[1];
    const double sin2 = std::max(0.0, (1.0 - c) * (1.0 + c));
    const double shifted = beta * c - alpha;
    const double radicand = shifted * shifted + beta * beta * sin2 * (1.0 - alpha * alpha);
    const double root = std::sqrt(radicand);
    return {root / (1.0 - alpha * beta * c), root > 0.0 ? shifted / root : 1.0, q[2]};
  };
  long checked = 0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    const double beta = rng.uniform(4 * t, 0.15, 0.9);
    const double c = rng.uniform(4 * t + 1, -0.9, 0.9);
    const double phi = rng.uniform(4 * t + 2, 0.0, 6.28);
    const double alpha = rng.uniform(4 * t + 3, -0.9, 0.9);
    const PolarVelocity p(Model::Relativistic, beta, c, phi);
    const double closed = polar_boost_jacobian(p, alpha);
    const double shifted = beta * c - alpha;
    if (shifted * shifted + beta * beta * (1 - c * c) * (1 - alpha * alpha) < 1e-4) continue;
    const Eigen::Matrix3d j = fd_jacobian(
        [&](const Eigen::Vector3d& x) { return raw_boost(x, alpha); }, {beta, c, phi});
    CHECK(testing::rel_err(std::abs(j.determinant()), closed) <= 1e-6);
    ++checked;
  }
  CHECK(checked > 400);
}

TEST_CASE("region measures: closed forms and quadrature") {
  // Empty regions.
  CHECK(region_measure(Model::Relativistic, BallRegion{0.0}, 1.0) == 0.0);
  const BoxRegion flat{{0.1, 0.1, 0.1}, {0.5, 0.1, 0.4}};
  CHECK(region_measure(Model::Relativistic, flat, 1.0) == 0.0);

  // Relativistic ball beta <= tanh(1): pi (sinh 2 - 2).
  CHECK(region_measure(Model::Relativistic, BallRegion{std::tanh(1.0)}, 1.0) ==
        doctest::Approx(5.110932705708289).epsilon(1e-12));

  // Classical ball radius 2: (4/3) pi 8.
  CHECK(region_measure(Model::Classical, BallRegion{2.0}, 1.0) ==
        doctest::Approx(33.510321638291128).epsilon(1e-13));

  // Classical box is a^3 times the Euclidean volume.
  const BoxRegion unit{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
  CHECK(region_measure(Model::Classical, unit, 2.0) == doctest::Approx(8.0).epsilon(1e-15));

  // Relativistic box against an independent high-precision evaluation.
  const BoxRegion box{{0.0, 0.0, 0.0}, {0.5, 0.4, 0.3}};
  CHECK(region_measure(Model::Relativistic, box, 1.0) ==
        doctest::Approx(0.09000998010698835).epsilon(1e-9));

  // Cubic scale law.
  CHECK(region_measure(Model::Relativistic, box, 2.0) ==
        doctest::Approx(8.0 * 0.09000998010698835).epsilon(1e-9));

  // Regions reaching the light sphere diverge.
  CHECK_THROWS_AS(region_measure(Model::Relativistic, BallRegion{1.0}, 1.0), DivergenceError);
  CHECK_THROWS_AS(region_measure(Model::Relativistic, BallRegion{1.5}, 1.0), DivergenceError);
  const BoxRegion touching{{0.0, 0.0, 0.0}, {0.8, 0.7, 0.5}};  // corner norm > 1
  CHECK_THROWS_AS(region_measure(Model::Relativistic, touching, 1.0), DivergenceError);
  CHECK_NOTHROW(region_measure(Model::Relativistic, BallRegion{1.0 - 1e-7}, 1.0));

  // A divergence error is a domain error.
  CHECK_THROWS_AS(region_measure(Model::Relativistic, BallRegion{1.0}, 1.0), DomainError);

  CHECK_THROWS_AS(region_measure(Model::Classical, BallRegion{-1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(region_measure(Model::Classical, BoxRegion{{0, 0, 0}, {-1, 1, 1}}, 1.0),
                  DomainError);
}
