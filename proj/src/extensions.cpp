#include "lpa/extensions.hpp"

#include <algorithm>
#include <cmath>

#include "lpa/errors.hpp"
#include "lpa/oracle.hpp"

namespace lpa {

PowerCostPair PowerCostPair::make(double a, double b, double m, double R, double I) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidCost("cost scales must be positive");
  if (!(m > 2.0)) throw InvalidCost("cost exponent must exceed 2");
  if (!(R > I && I > 0.0)) throw InvalidCost("requires R > I > 0");
  PowerCostPair p;
  p.swapped = a > b;
  p.a = std::min(a, b);
  p.b = std::max(a, b);
  p.m = m;
  p.R = R;
  p.I = I;
  return p;
}

double PowerCostPair::cost_ratio_root() const { return std::pow(a / b, 1.0 / m); }

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

ContinuousDbdReport solve_continuous_dbd(double R, double I, double scale,
                                         double m, double p) {
  if (!(scale > 0.0) || !(m > 2.0)) throw InvalidCost("power cost needs scale > 0, m > 2");
  if (!(R > I && I > 0.0)) throw InvalidCost("requires R > I > 0");
  if (!(p >= 0.0 && p < 1.0)) throw InvalidCost("p out of [0,1)");
  if (scale * m <= R - I)
    throw NoInteriorOptimum("marginal cost at lambda = 1 must exceed R - I");

  auto cPrime = [&](double lam) { return scale * m * std::pow(lam, m - 1.0); };
  auto objective = [&](double lam) {
    return lam * (R - I) - (lam + (1.0 - lam) * p) * cPrime(lam) / (1.0 - p);
  };

  ContinuousDbdReport rep;
  rep.lambdaFirstBest = std::pow((R - I) / (scale * m), 1.0 / (m - 1.0));
  if (p == 0.0) {
    rep.lambdaStar = std::pow((R - I) / (scale * m * m), 1.0 / (m - 1.0));
  } else {
    rep.lambdaStar = golden_max(objective, 1e-9, 1.0);
  }
  rep.sR = cPrime(rep.lambdaStar) / (1.0 - p);
  rep.sI = p * rep.sR;
  rep.lpValue = objective(rep.lambdaStar);
  rep.gpGross = (rep.lambdaStar + (1.0 - rep.lambdaStar) * p) * rep.sR;
  rep.gpNetProfit = rep.gpGross - scale * std::pow(rep.lambdaStar, m);
  return rep;
}

ContinuousWpReport solve_continuous_wp(const PowerCostPair& costs) {
  const double a = costs.a;
  const double m = costs.m;
  const double RI = costs.R - costs.I;
  if (a * m <= RI)
    throw NoInteriorOptimum("marginal cost at lambda = 1 must exceed R - I");

  ContinuousWpReport rep;
  rep.C = costs.cost_ratio_root();
  rep.lambdaA = std::pow((1.0 + rep.C) * RI / (a * m * m), 1.0 / (m - 1.0));
  rep.lambdaB = rep.C * rep.lambdaA;
  rep.s2R = (a / rep.C) * m * std::pow(rep.lambdaA, m - 2.0);
  rep.lpValue = rep.lambdaA * (1.0 + rep.C) * RI * (1.0 - 1.0 / m);
  return rep;
}

PowerComparison compare_power(const PowerCostPair& costs) {
  PowerComparison out;
  out.wpLpValue = solve_continuous_wp(costs).lpValue;
  const ContinuousDbdReport da =
      solve_continuous_dbd(costs.R, costs.I, costs.a, costs.m, 0.0);
  const ContinuousDbdReport db =
      solve_continuous_dbd(costs.R, costs.I, costs.b, costs.m, 0.0);
  out.dbdLpValue = da.lpValue + db.lpValue;
  out.margin = out.wpLpValue - out.dbdLpValue;
  if (!(out.margin > 0.0))
    throw OracleMismatch("whole-portfolio LP value failed to dominate deal-by-deal "
                         "under power costs");
  return out;
}

void UninformedScenario::require_valid() const {
  if (!(rho1 <= rho2)) throw InvalidScenario("rho interval reversed");
  base.with_rho(rho1).require_valid();
  base.with_rho(rho2).require_valid();
}

UninformedReport solve_uninformed(const UninformedScenario& u) {
  u.require_valid();
  const PortfolioScenario atHigh = u.base.with_rho(u.rho2);
  const RhoDoubleStar r2 = rho_double_star(atHigh);

  const bool offerWp = r2.kind == RhoDoubleStar::Kind::WpAlways ||
                       (r2.kind == RhoDoubleStar::Kind::Root && u.rho2 >= r2.value);

  UninformedReport rep;
  if (offerWp) {
    rep.offeredMethod = "wp";
    rep.offeredRho = u.rho2;
    rep.contract = solve_wp(atHigh);
    // Payout shape (z/p1^2, z/p1, z): the GP's payoff slope in rho is
    // lambda_min (x - 2y + z) = lambda_min z (1/p1 - 1)^2 > 0, so the GP
    // picks the top of the interval.
    const SignalSpace space(Market::from_scenario(atHigh), SignalKind::Aggregate);
    const double x = rep.contract.contract.payouts[static_cast<size_t>(space.index_of_label("2R"))];
    const double y = rep.contract.contract.payouts[static_cast<size_t>(space.index_of_label("R+I"))];
    const double z = rep.contract.contract.payouts[static_cast<size_t>(space.index_of_label("2I"))];
    rep.gpRhoDerivative = u.base.lambda_min() * (x - 2.0 * y + z);
    if (!(rep.gpRhoDerivative > 0.0))
      throw OracleMismatch("GP rho-derivative not positive under the offered shape");
    rep.chosenRho = u.rho2;
  } else {
    rep.offeredMethod = "dbd";
    rep.offeredRho = u.rho2;
    rep.contract = solve_dbd_portfolio(atHigh);
    rep.gpRhoDerivative = 0.0;  // deal-by-deal payout is correlation-free
    rep.chosenRho = u.rho2;
  }
  return rep;
}

BargainingReport solve_bargaining(const PortfolioScenario& s, bool reputable) {
  s.require_valid();

  BargainingReport rep;
  rep.uniqueContract = false;

  PortfolioScenario solveAt = s;
  if (!reputable) {
    // With the bargaining power the GP also picks the correlation; FNO
    // surplus falls in rho, so she takes the smallest admissible value.
    rep.chosenRho = s.rho_min_valid();
    solveAt = s.with_rho(rep.chosenRho);
  } else {
    rep.chosenRho = s.rho();
  }

  const SolutionReport base =
      reputable ? solve_wp(solveAt) : solve_fno_wp(solveAt);
  const double total = base.totalSurplus;
  const double gpTarget = total - 2.0 * s.I();
  if (gpTarget < base.gpExpected - 1e-12)
    throw InfeasibleParticipation(
        "LP cannot break even under any incentive-compatible contract");

  const double scale = gpTarget / base.gpExpected;
  rep.method = reputable ? "either" : "wp";
  rep.gpGross = gpTarget;
  rep.gpNetValue = gpTarget - 2.0 * s.c();
  rep.lpValue = 2.0 * s.I();
  rep.contract = base.contract;
  for (double& v : rep.contract.payouts) v *= scale;
  rep.contractEntries = base.contractEntries;
  for (auto& [label, v] : rep.contractEntries) v *= scale;

  if (!reputable) {
    // The paper claims WP survives even at rho = 1; verified, not assumed.
    const FnoWpCore atOne = fno_wp_core(s.with_rho(1.0));
    rep.wpSurplusDominatesDbd = atOne.total >= dbd_fno_total(s) - 1e-12;
  } else {
    rep.wpSurplusDominatesDbd = true;
  }

  // The scaled schedule must still implement the intended strategy and pin
  // the LP at exactly 2I.
  const Market m = Market::from_scenario(solveAt);
  const SignalSpace space(m, rep.contract.kind);
  const GPStrategy target =
      reputable ? first_best_strategy(2) : fno_two_project_target();
  if (!strategy_in_argmax(m, space, rep.contract, target))
    throw OracleMismatch("scaled bargaining contract no longer implements the target");
  const TotalAndLp tl = expected_total_and_lp_value(m, space, rep.contract, target);
  if (std::abs(tl.lpValue - 2.0 * s.I()) > 1e-9 * std::max(1.0, 2.0 * s.I()))
    throw OracleMismatch("bargaining contract misses the LP break-even point");
  return rep;
}

}  // namespace lpa
