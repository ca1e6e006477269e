#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "lpa/analysis.hpp"
#include "lpa/errors.hpp"
#include "lpa/sampling.hpp"

using namespace lpa;

namespace {
const PortfolioScenario kS0(3.0, 1.0, 0.1, {0.5, 0.2}, {0.5, 0.2}, 1.0);
const PortfolioScenario kS1(3.0, 1.0, 0.05, {0.4, 0.3}, {0.6, 0.1}, 0.5);
}  // namespace

TEST_CASE("rho_star: equal lambdas give zero") {
  CHECK(rho_star(kS0) == 0.0);
}

TEST_CASE("rho_star: S1 value is 3/14") {
  CHECK(rho_star(kS1) == doctest::Approx(3.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("rho_star can exceed one (low regime everywhere)") {
  const PortfolioScenario s(1.8, 1.0, 0.005, {0.1, 0.5}, {0.9, 0.1}, 0.5);
  REQUIRE(s.validate().all_pass());
  CHECK(rho_star(s) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("rho_double_star: S0 is WP-always") {
  const RhoDoubleStar r = rho_double_star(kS0);
  CHECK(r.kind == RhoDoubleStar::Kind::WpAlways);
}

TEST_CASE("rho_double_star: interior root flips the preference") {
  // S1's lambdas and p1 with a small p2 put the crossing inside (0, 1).
  const PortfolioScenario s = kS1.with_project(1, {0.6, 0.02});
  const RhoDoubleStar r = rho_double_star(s);
  REQUIRE(r.kind == RhoDoubleStar::Kind::Root);
  CHECK(r.value > 0.0);
  CHECK(r.value < 1.0);
  CHECK(wp_gp_expected(s.with_rho(r.value + 1e-6)) < dbd_gp_expected(s));
  CHECK(wp_gp_expected(s.with_rho(r.value - 1e-6)) > dbd_gp_expected(s));
  CHECK(r.value <= rho_star(s) + 1e-8);
}

TEST_CASE("rho_double_star converges when the crossing sits at rho*") {
  // With lambda_max on the p1 project and p2 = 0, the deal-by-deal payout
  // equals the whole-portfolio payout exactly at the regime boundary, so
  // rho** = rho*.
  const PortfolioScenario s(3.0, 1.0, 0.05, {0.6, 0.3}, {0.4, 0.0}, 0.5);
  REQUIRE(s.validate().all_pass());
  const double rhoStar = rho_star(s);
  REQUIRE(rhoStar < 1.0);
  const double wpAtStar = wp_gp_expected(s.with_rho(rhoStar));
  REQUIRE(wpAtStar == doctest::Approx(dbd_gp_expected(s)).epsilon(1e-12));
  const RhoDoubleStar r = rho_double_star(s);
  REQUIRE(r.kind == RhoDoubleStar::Kind::Root);
  CHECK(r.value == doctest::Approx(rhoStar).epsilon(1e-6));
}

TEST_CASE("p2_star: WP-always scenarios return zero") {
  const P2Star p = p2_star(kS0);
  CHECK(p.kind == P2Star::Kind::WpAlways);
  CHECK(p.value == 0.0);
}

TEST_CASE("p2_star: interior crossing and preference flip") {
  const PortfolioScenario s = kS1.with_rho(0.1);
  const P2Star p = p2_star(s);
  REQUIRE(p.kind == P2Star::Kind::Interior);
  CHECK(p.value > 0.0);
  CHECK(p.value < s.p1());
  // On either side of p2* the preferred method flips.
  const ComparisonReport below =
      compare_methods(s.with_project(1, {0.6, p.value - 1e-4}), true);
  const ComparisonReport above =
      compare_methods(s.with_project(1, {0.6, p.value + 1e-4}), true);
  CHECK(below.preferred == "DBD");
  CHECK(above.preferred == "WP");
}

TEST_CASE("p2_star: DBD-always when even p2 = p1 keeps deal-by-deal cheaper") {
  const PortfolioScenario s(3.0, 1.0, 0.05, {0.15, 0.3}, {0.6, 0.01}, 0.2);
  REQUIRE(s.validate().all_pass());
  const P2Star p = p2_star(s);
  CHECK(p.kind == P2Star::Kind::DbdAlways);
  CHECK(p.value == doctest::Approx(s.p1()));
}

TEST_CASE("compare_methods: S0 prefers whole-portfolio for both reputations") {
  const ComparisonReport rep = compare_methods(kS0, true);
  CHECK(rep.preferred == "WP");
  CHECK(rep.wpLpValue > rep.dbdLpValue);
  const ComparisonReport fno = compare_methods(kS0, false);
  CHECK(fno.preferred == "WP");
}

TEST_CASE("compare_methods: no adverse selection makes the method irrelevant") {
  const PortfolioScenario s(3.0, 1.0, 0.1, {0.5, 0.0}, {0.5, 0.0}, 0.5);
  const ComparisonReport rep = compare_methods(s, true);
  CHECK(rep.preferred == "tie");
}

TEST_CASE("compare_methods: WP-preferred region is upward-closed in rho and p2") {
  ScenarioSampler sampler(71, SamplerOptions{.strictP2Positive = true});
  for (int i = 0; i < 8; ++i) {
    const PortfolioScenario s = sampler.next();
    const double lo = s.rho_min_valid();
    bool seenWp = false;
    for (int k = 0; k <= 10; ++k) {
      const double rho = lo + (1.0 - lo) * k / 10.0;
      const bool wp = compare_methods(s.with_rho(rho), true).preferred != "DBD";
      if (seenWp) CHECK(wp);
      seenWp = seenWp || wp;
    }
    seenWp = false;
    for (int k = 1; k <= 10; ++k) {
      const double p2 = s.p1() * k / 10.0;
      const bool wp =
          compare_methods(s.with_project(1, {s.project(1).lambda, p2}), true)
              .preferred != "DBD";
      if (seenWp) CHECK(wp);
      seenWp = seenWp || wp;
    }
  }
}

TEST_CASE("comparative statics: high-rho sign table") {
  const PortfolioScenario s(3.0, 1.0, 0.1, {0.55, 0.2}, {0.5, 0.2}, 0.9);
  CHECK(comparative_statics(s, "p1").sign == 1);
  CHECK(comparative_statics(s, "lambda_max").sign == -1);
  CHECK(comparative_statics(s, "lambda_min").sign == -1);
  CHECK(comparative_statics(s, "rho").sign == -1);
}

TEST_CASE("comparative statics: low-rho sign table") {
  const PortfolioScenario s = kS1.with_rho(0.1);
  CHECK(comparative_statics(s, "p1").sign == 1);
  CHECK(comparative_statics(s, "lambda_max").sign == 1);
  CHECK(comparative_statics(s, "lambda_min").sign == -1);
  CHECK(comparative_statics(s, "rho").sign == -1);
}

TEST_CASE("comparative statics: stepping across rho* raises RegimeStraddle") {
  const PortfolioScenario s = kS1.with_rho(rho_star(kS1));
  CHECK_THROWS_AS(comparative_statics(s, "rho", 1e-5), RegimeStraddle);
}

TEST_CASE("feasibility: baseline scenario funds everywhere") {
  const FeasibilityReport rep = feasibility(kS0);
  CHECK(rep.projectReputable[0]);
  CHECK(rep.projectReputable[1]);
  CHECK(rep.projectFno[0]);
  CHECK(rep.projectFno[1]);
  CHECK(rep.wp);
  CHECK(rep.wpFno);
  CHECK(rep.containmentOk);
}

TEST_CASE("feasibility: FNO funding is the stronger requirement") {
  // Under Assumption 1 the invest-always surplus is smaller at the same GP
  // payment, so a reputable-feasible project can be FNO-infeasible but never
  // the reverse.
  const PortfolioScenario s(3.0, 1.0, 0.3, {0.35, 0.3}, {0.35, 0.3}, 1.0);
  REQUIRE(s.validate().all_pass());
  const FeasibilityReport rep = feasibility(s);
  CHECK(rep.projectReputable[0]);
  CHECK_FALSE(rep.projectFno[0]);
  CHECK(rep.containmentOk);

  ScenarioSampler sampler(72);
  for (int i = 0; i < 100; ++i) {
    const FeasibilityReport r = feasibility(sampler.next());
    CHECK(r.containmentOk);
  }
}

TEST_CASE("sweep: CSV header, row count, and determinism") {
  const std::string csv = sweep_csv(kS0, "rho", 0.0, 1.0, 5, true);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "param,value,gp_expected,lp_expected,preferred,regime");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
  CHECK(sweep_csv(kS0, "rho", 0.0, 1.0, 5, true) == csv);
}

TEST_CASE("sweep: invalid cells are skipped") {
  // rho below rho_min_valid fails the joint-distribution check.
  const PortfolioScenario s(3.0, 1.0, 0.05, {0.8, 0.2}, {0.9, 0.1}, 0.9);
  const std::string csv = sweep_csv(s, "rho", 0.0, 1.0, 11, true);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows < 11);
  CHECK(rows > 0);
}
