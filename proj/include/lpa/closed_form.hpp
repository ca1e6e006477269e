#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lpa/market.hpp"
#include "lpa/oracle.hpp"
#include "lpa/scenario.hpp"

namespace lpa {

/// Result of one contract solve. gpExpected is the gross expected payout to
/// the GP (effort costs not subtracted); lpExpected = totalSurplus -
/// gpExpected is the gross expected cash retained by the LP. Net profits
/// subtract the effort cost (GP side) and the capital outlay (LP side).
struct SolutionReport {
  std::string method;
  std::string regime;
  ContractSchedule contract;
  std::vector<std::pair<std::string, double>> contractEntries;  // label -> payout
  double gpExpected = 0.0;
  double lpExpected = 0.0;
  double totalSurplus = 0.0;
  double effortCost = 0.0;
  double capitalOutlay = 0.0;
  bool fundingFeasible = false;
  std::vector<std::string> bindingConstraints;
  double oracleGap = 0.0;
  std::vector<std::string> notes;

  double gp_net_profit() const { return gpExpected - effortCost; }
  double lp_net_profit() const { return lpExpected - capitalOutlay; }
};

/// Whole-portfolio closed form without the oracle cross-check; the cheap path
/// used by threshold searches and parameter sweeps.
struct WpCore {
  double z = 0.0, y = 0.0, x = 0.0;
  double gp = 0.0;     // gross expected payout
  double total = 0.0;  // gross expected portfolio cash
  double rhoStar = 0.0;
  bool highRegime = false;
  DerivedCoefficients co;
};

WpCore wp_core(const PortfolioScenario& s);
double wp_gp_expected(const PortfolioScenario& s);

/// FNO whole-portfolio closed form without the oracle cross-check.
struct FnoWpCore {
  double y = 0.0, x = 0.0;
  double gp = 0.0;
  double total = 0.0;
  bool highRegime = false;
};

FnoWpCore fno_wp_core(const PortfolioScenario& s);

/// Deal-by-deal gross GP payout for the two-project fund:
/// 2c + sum_i p_i c / (lambda_i (1 - p_i)).
double dbd_gp_expected(const PortfolioScenario& s);

/// Expected fund cash under first-best investment (method-independent).
double dbd_total(const PortfolioScenario& s);

/// FNO deal-by-deal gross payout and expected cash (invest-always per project).
double dbd_fno_gp_expected(const PortfolioScenario& s);
double dbd_fno_total(const PortfolioScenario& s);

/// Threshold between the two whole-portfolio regimes.
double rho_star_value(const PortfolioScenario& s);

// ---- Solvers (each cross-validated against the oracle before returning) ----

SolutionReport solve_dbd_single(double R, double I, double c, ProjectParams proj);
SolutionReport solve_wp(const PortfolioScenario& s);
SolutionReport solve_fno_single(double R, double I, double c, ProjectParams proj);
SolutionReport solve_fno_wp(const PortfolioScenario& s);
SolutionReport solve_conditional(const PortfolioScenario& s);
SolutionReport solve_wp_monotone(const PortfolioScenario& s);
SolutionReport solve_three_point_single(const ThreePointParams& tp);

/// Two independent single-project contracts presented as one per-project
/// schedule (the fund-level deal-by-deal report).
SolutionReport solve_dbd_portfolio(const PortfolioScenario& s);
SolutionReport solve_dbd_fno_portfolio(const PortfolioScenario& s);

}  // namespace lpa
