#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lpa/rng.hpp"
#include "lpa/sampling.hpp"
#include "lpa/scenario.hpp"

using namespace lpa;

namespace {
const PortfolioScenario kS0(3.0, 1.0, 0.1, {0.5, 0.2}, {0.5, 0.2}, 1.0);
const PortfolioScenario kS1(3.0, 1.0, 0.05, {0.4, 0.3}, {0.6, 0.1}, 0.5);
}  // namespace

TEST_CASE("validation accepts the baseline scenario") {
  const ValidationReport rep = kS0.validate();
  CHECK(rep.all_pass());
}

TEST_CASE("assumption 1 failure is reported, not thrown") {
  const PortfolioScenario bad(3.0, 1.0, 0.1, {0.5, 0.4}, {0.5, 0.4}, 0.0);
  const ValidationReport rep = bad.validate();
  CHECK_FALSE(rep.all_pass());
  bool a1Failed = false;
  for (const auto& c : rep.checks)
    if (c.name.rfind("assumption1", 0) == 0 && !c.pass) a1Failed = true;
  CHECK(a1Failed);
  CHECK_THROWS_AS(bad.require_valid(), InvalidScenario);
}

TEST_CASE("joint distribution nonnegativity rejects heavy marginals at rho=0") {
  const PortfolioScenario bad(3.0, 1.0, 0.1, {0.8, 0.2}, {0.9, 0.2}, 0.0);
  const ValidationReport rep = bad.validate();
  bool jointFailed = false;
  for (const auto& c : rep.checks)
    if (c.name == "joint_nonneg" && !c.pass) jointFailed = true;
  CHECK(jointFailed);
}

TEST_CASE("lattice collision R == 2I is rejected") {
  const PortfolioScenario bad(2.0, 1.0, 0.1, {0.5, 0.2}, {0.5, 0.2}, 0.5);
  CHECK_FALSE(bad.validate().all_pass());
}

TEST_CASE("projects are stored p-descending with original indices") {
  CHECK(kS1.p1() == 0.3);
  CHECK(kS1.p2() == 0.1);
  CHECK(kS1.lambda1() == 0.4);
  CHECK(kS1.lambda2() == 0.6);
  CHECK(kS1.original_index(0) == 0);

  const PortfolioScenario swapped(3.0, 1.0, 0.05, {0.6, 0.1}, {0.4, 0.3}, 0.5);
  CHECK(swapped.p1() == 0.3);
  CHECK(swapped.lambda1() == 0.4);
  CHECK(swapped.original_index(0) == 1);
}

TEST_CASE("joint type distribution matches the worked examples") {
  const PortfolioScenario s(3.0, 1.0, 0.05, {0.5, 0.2}, {0.5, 0.2}, 0.0);
  const JointTypeDistribution d0 = s.joint_type_distribution(EffortSet::Both);
  CHECK(d0.pGG == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(d0.pGB == doctest::Approx(0.5));
  CHECK(d0.pBG == doctest::Approx(0.5));
  CHECK(d0.pBB == doctest::Approx(0.0).epsilon(1e-12));

  const JointTypeDistribution d1 = kS0.joint_type_distribution(EffortSet::Both);
  CHECK(d1.pGG == doctest::Approx(0.5));
  CHECK(d1.pBB == doctest::Approx(0.5));

  const JointTypeDistribution d2 = kS1.joint_type_distribution(EffortSet::Both);
  CHECK(d2.pGG == doctest::Approx(0.2));
  CHECK(d2.pGB == doctest::Approx(0.2));
  CHECK(d2.pBG == doctest::Approx(0.4));
  CHECK(d2.pBB == doctest::Approx(0.2));

  const JointTypeDistribution d3 = kS1.joint_type_distribution(EffortSet::First);
  CHECK(d3.pGG == 0.0);
  CHECK(d3.pGB == doctest::Approx(0.4));
  CHECK(d3.pBG == 0.0);
  CHECK(d3.pBB == doctest::Approx(0.6));
}

TEST_CASE("joint distribution sums to one and matches marginals on random draws") {
  ScenarioSampler sampler(11);
  for (int i = 0; i < 200; ++i) {
    const PortfolioScenario s = sampler.next();
    for (EffortSet e : {EffortSet::None, EffortSet::First, EffortSet::Second,
                        EffortSet::Both}) {
      const JointTypeDistribution d = s.joint_type_distribution(e);
      CHECK(std::abs(d.sum() - 1.0) <= 1e-12);
      const unsigned mask = effort_mask(e);
      const double m1 = (mask & 1u) ? s.lambda1() : 0.0;
      const double m2 = (mask & 2u) ? s.lambda2() : 0.0;
      CHECK(std::abs(d.marginal1() - m1) <= 1e-12);
      CHECK(std::abs(d.marginal2() - m2) <= 1e-12);
      CHECK(d.pGG >= 0.0);
      CHECK(d.pGB >= 0.0);
      CHECK(d.pBG >= 0.0);
      CHECK(d.pBB >= 0.0);
    }
  }
}

TEST_CASE("pGG and pBB increase in rho at slope lambda_min") {
  ScenarioSampler sampler(12);
  for (int i = 0; i < 50; ++i) {
    PortfolioScenario s = sampler.next();
    const double lo = s.rho_min_valid();
    const double rho = 0.5 * (lo + 1.0);
    const double h = 1e-6;
    if (rho - h < lo || rho + h > 1.0) continue;
    const JointTypeDistribution up =
        s.with_rho(rho + h).joint_type_distribution(EffortSet::Both);
    const JointTypeDistribution dn =
        s.with_rho(rho - h).joint_type_distribution(EffortSet::Both);
    CHECK((up.pGG - dn.pGG) / (2.0 * h) == doctest::Approx(s.lambda_min()).epsilon(1e-6));
    CHECK((up.pBB - dn.pBB) / (2.0 * h) == doctest::Approx(s.lambda_min()).epsilon(1e-6));
  }
}

TEST_CASE("degenerate case rho=0 with lambdas summing to one") {
  const PortfolioScenario s(3.0, 1.0, 0.05, {0.45, 0.2}, {0.55, 0.1}, 0.0);
  const JointTypeDistribution d = s.joint_type_distribution(EffortSet::Both);
  CHECK(d.pGG == 0.0);
  CHECK(d.pBB == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("aggregate outcomes are the six distinct cash values") {
  const auto outs = kS0.aggregate_outcomes();
  CHECK(outs[0] == 0.0);
  CHECK(outs[1] == 1.0);
  CHECK(outs[2] == 2.0);
  CHECK(outs[3] == 3.0);
  CHECK(outs[4] == 4.0);
  CHECK(outs[5] == 6.0);
}

TEST_CASE("derived coefficients") {
  const DerivedCoefficients co = DerivedCoefficients::from(kS1);
  CHECK(co.alpha == doctest::Approx(0.2));
  CHECK(co.beta == doctest::Approx(0.6));
  CHECK(co.gamma == doctest::Approx(0.2));
  CHECK(co.betaTilde == doctest::Approx(0.66));
  CHECK(co.alpha + co.beta + co.gamma == doctest::Approx(1.0));
  CHECK(co.theta1 == doctest::Approx(0.4 + 0.3 * 0.6));
  CHECK(co.theta2 == doctest::Approx(0.6 + 0.3 * 0.4));
}

TEST_CASE("rho_min_valid bounds the admissible correlation range") {
  const PortfolioScenario s(3.0, 1.0, 0.05, {0.8, 0.2}, {0.9, 0.1}, 0.9);
  CHECK(s.rho_min_valid() == doctest::Approx((1.7 - 1.0) / 0.8));
  CHECK(s.validate().all_pass());
  CHECK_FALSE(s.with_rho(0.5).validate().all_pass());
}
