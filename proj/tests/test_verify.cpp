#include <string>

#include "doctest.h"
#include "json.hpp"
#include "velspace/error.hpp"
#include "velspace/measures.hpp"
#include "velspace/velocity.hpp"
#include "velspace/verify.hpp"

using namespace velspace;

TEST_CASE("check names round-trip") {
  for (const Check check : kAllChecks) {
    const auto back = check_from_string(to_string(check));
    REQUIRE(back.has_value());
    CHECK(*back == check);
  }
  CHECK(to_string(Check::Jacobian) == "jacobian");
  CHECK(to_string(Check::PriorInvariance) == "prior_invariance");
  CHECK(to_string(Check::McInvariance) == "mc_invariance");
  CHECK(to_string(Check::VolumeDivergence) == "volume_divergence");
  CHECK(!check_from_string("no_such_check").has_value());
  CHECK(!check_from_string("").has_value());
}

TEST_CASE("configuration validation") {
  CheckConfig config;
  config.trials = 0;
  CHECK_THROWS_AS(run_checks(config), DomainError);
  config.trials = -5;
  CHECK_THROWS_AS(run_checks(config), DomainError);
  config.trials = 10;
  config.tol = 0.0;
  CHECK_THROWS_AS(run_checks(config), DomainError);
  config.tol = -1.0;
  CHECK_THROWS_AS(run_checks(config), DomainError);
}

TEST_CASE("single suite passes and reports a held tolerance") {
  CheckConfig config;
  config.suite = {Check::PriorInvariance};
  config.trials = 2000;
  config.seed = 42;
  const VerificationReport report = run_checks(config);
  REQUIRE(report.checks.size() == 1);
  const CheckResult& r = report.checks[0];
  CHECK(r.check == "prior_invariance");
  CHECK(r.pass);
  CHECK(report.overall);
  CHECK(r.trials == 2000);
  CHECK(r.max_error <= r.tol);  // the published contract of a pass
  CHECK(r.tol == 1e-10);
  CHECK(r.seconds >= 0.0);
  CHECK(r.error.empty());
}

TEST_CASE("all checks pass at a smoke-test trial count") {
  CheckConfig config;
  config.trials = 50;
  config.seed = 3;
  const VerificationReport report = run_checks(config);
  REQUIRE(report.checks.size() == kAllChecks.size());
  for (const CheckResult& r : report.checks) {
    CAPTURE(r.check);
    CHECK(r.pass);
    CHECK(r.max_error <= r.tol);
    CHECK(r.error.empty());
  }
  CHECK(report.overall);
}

TEST_CASE("reports are deterministic apart from timings") {
  CheckConfig config;
  config.trials = 300;
  config.seed = 7;
  const VerificationReport a = run_checks(config);
  const VerificationReport b = run_checks(config);
  REQUIRE(a.checks.size() == b.checks.size());
  CHECK(a.overall == b.overall);
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].check == b.checks[i].check);
    CHECK(a.checks[i].pass == b.checks[i].pass);
    CHECK(a.checks[i].trials == b.checks[i].trials);
    CHECK(a.checks[i].max_error == b.checks[i].max_error);  // bitwise
    CHECK(a.checks[i].tol == b.checks[i].tol);
  }
}

TEST_CASE("suites run in canonical order regardless of request order") {
  CheckConfig config;
  config.suite = {Check::McInvariance, Check::Jacobian, Check::Jacobian};
  config.trials = 20;
  const VerificationReport report = run_checks(config);
  REQUIRE(report.checks.size() == 2);  // duplicates collapse
  CHECK(report.checks[0].check == "jacobian");
  CHECK(report.checks[1].check == "mc_invariance");
}

TEST_CASE("an unreachable tolerance fails the run instead of passing vacuously") {
  CheckConfig config;
  config.suite = {Check::PriorInvariance};
  config.trials = 200;
  config.tol = 1e-30;
  const VerificationReport report = run_checks(config);
  REQUIRE(report.checks.size() == 1);
  CHECK(!report.checks[0].pass);
  CHECK(!report.overall);
  CHECK(report.checks[0].tol == 1e-30);
  CHECK(report.checks[0].max_error > 1e-30);
}

TEST_CASE("invariance check rejects a non-invariant density") {
  // The genuine invariant density passes well under the primary tolerance...
  const double good = detail::prior_invariance_max_error(
      500, 42, [](const PolarVelocity& p) { return prior_relativistic_polar(p, 1.0).value; });
  CHECK(good <= 1e-10);
  // ...while a flat density is detected with a wide margin.
  const double bad = detail::prior_invariance_max_error(
      500, 42, [](const PolarVelocity&) { return 1.0; });
  CHECK(bad > 1e-2);
}

TEST_CASE("JSON report: stable keys, stable order") {
  CheckConfig config;
  config.suite = {Check::VolumeDivergence, Check::Nonfactorization};
  config.trials = 10;
  const VerificationReport report = run_checks(config);
  const std::string text = report_to_json(report);
  const nlohmann::json parsed = nlohmann::json::parse(text);

  REQUIRE(parsed.contains("checks"));
  REQUIRE(parsed.contains("overall"));
  CHECK(parsed["overall"].is_boolean());
  REQUIRE(parsed["checks"].size() == 2);
  CHECK(parsed["checks"][0]["check"] == "nonfactorization");
  CHECK(parsed["checks"][1]["check"] == "volume_divergence");
  for (const auto& entry : parsed["checks"]) {
    CHECK(entry.contains("pass"));
    CHECK(entry.contains("trials"));
    CHECK(entry.contains("max_error"));
    CHECK(entry.contains("tol"));
    CHECK(entry.contains("seconds"));
    CHECK(!entry.contains("error"));  // only present on aborted checks
  }

  // Serialized key order is part of the format.
  const std::size_t at_check = text.find("\"check\"");
  const std::size_t at_pass = text.find("\"pass\"");
  const std::size_t at_trials = text.find("\"trials\"");
  const std::size_t at_max_error = text.find("\"max_error\"");
  const std::size_t at_tol = text.find("\"tol\"");
  const std::size_t at_seconds = text.find("\"seconds\"");
  CHECK(at_check < at_pass);
  CHECK(at_pass < at_trials);
  CHECK(at_trials < at_max_error);
  CHECK(at_max_error < at_tol);
  CHECK(at_tol < at_seconds);
}
