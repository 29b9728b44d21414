#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "velspace/velocity.hpp"

namespace velspace {

/// Property suites over randomized draws. Each check reports the worst
/// observed error across its assertions together with the tolerance that
/// error was held to, so a passing check always satisfies
/// max_error <= tol.
enum class Check {
  Jacobian,         // change-of-variables identity for the polar boost
  PriorInvariance,  // boost invariance of the relativistic density
  MetricPrior,      // sqrt(det g) proportional to the density
  Isometry,         // boosts and rotations preserve geodesic distance
  RapidityFlat,     // constant density and additive boosts in rapidity
  ClassicalLimit,   // small-speed agreement with the Euclidean forms
  Nonfactorization, // joint relativistic density is not a product of margins
  McInvariance,     // Monte Carlo occupancy matches invariant volumes
  VolumeDivergence, // ball volume grows without bound toward the light sphere
};

inline constexpr std::array<Check, 9> kAllChecks = {
    Check::Jacobian,        Check::PriorInvariance, Check::MetricPrior,
    Check::Isometry,        Check::RapidityFlat,    Check::ClassicalLimit,
    Check::Nonfactorization, Check::McInvariance,   Check::VolumeDivergence,
};

std::string_view to_string(Check check);
std::optional<Check> check_from_string(std::string_view name);

struct CheckConfig {
  std::vector<Check> suite{kAllChecks.begin(), kAllChecks.end()};
  long trials = 10000;            // randomized draws per check (>= 1)
  std::optional<double> tol;      // overrides each check's primary tolerance
  std::uint64_t seed = 0;
};

struct CheckResult {
  std::string check;
  bool pass = false;
  long trials = 0;
  double max_error = 0.0;  // worst error relative to its own tolerance
  double tol = 0.0;        // tolerance the reported error was held to
  double seconds = 0.0;
  std::string error;       // non-empty if the check aborted (e.g. no convergence)
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool overall = false;
};

/// Runs the configured checks in the fixed order of kAllChecks. Identical
/// (suite, trials, tol, seed) produce identical reports apart from timings.
/// Numerical failures inside a check are caught and reported on that check;
/// an invalid configuration throws DomainError.
VerificationReport run_checks(const CheckConfig& config);

/// JSON serialization with stable key order:
/// {"checks": [{"check", "pass", "trials", "max_error", "tol", "seconds"}...],
///  "overall": bool}.
std::string report_to_json(const VerificationReport& report);

namespace detail {

/// Worst error of the boost-invariance identity over `trials` seeded draws
/// with an arbitrary polar density. Exercised directly by tests to show the
/// suite rejects densities that differ from the invariant one.
double prior_invariance_max_error(
    long trials, std::uint64_t seed,
    const std::function<double(const PolarVelocity&)>& density);

}  // namespace detail

}  // namespace velspace
