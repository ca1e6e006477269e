#pragma once

#include <functional>
#include <string>

#include "lpa/analysis.hpp"
#include "lpa/closed_form.hpp"
#include "lpa/scenario.hpp"

namespace lpa {

/// Power effort costs c_i(lambda) = scale_i * lambda^m for the two projects,
/// canonicalized so project "a" has the smaller scale (the model is symmetric
/// in the two scales).
struct PowerCostPair {
  double a = 0.0;
  double b = 0.0;
  double m = 0.0;
  double R = 0.0;
  double I = 0.0;
  bool swapped = false;  // true if the constructor arguments were reordered

  static PowerCostPair make(double a, double b, double m, double R, double I);
  double cost_ratio_root() const;  // C = (a/b)^(1/m) <= 1
};

/// Golden-section maximizer for a unimodal function on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-10);

struct ContinuousDbdReport {
  double lambdaStar = 0.0;
  double lambdaFirstBest = 0.0;
  double sR = 0.0;
  double sI = 0.0;
  double lpValue = 0.0;    // LP profit net of outlay
  double gpGross = 0.0;    // expected payout
  double gpNetProfit = 0.0;
};

/// Single-project contract with continuous effort and power cost
/// scale*lambda^m; closed form at p = 0, golden-section otherwise.
ContinuousDbdReport solve_continuous_dbd(double R, double I, double scale,
                                         double m, double p);

struct ContinuousWpReport {
  double lambdaA = 0.0;  // effort of the low-cost project (scale a)
  double lambdaB = 0.0;
  double s2R = 0.0;
  double lpValue = 0.0;
  double C = 0.0;
};

/// Whole-portfolio contract paying only at 2R, for p1 = p2 = 0.
ContinuousWpReport solve_continuous_wp(const PowerCostPair& costs);

struct PowerComparison {
  double wpLpValue = 0.0;
  double dbdLpValue = 0.0;
  double margin = 0.0;  // wp - dbd, strictly positive
};

PowerComparison compare_power(const PowerCostPair& costs);

/// GP privately picks the correlation inside [rho1, rho2].
struct UninformedScenario {
  PortfolioScenario base;
  double rho1 = 0.0;
  double rho2 = 0.0;

  void require_valid() const;
};

struct UninformedReport {
  std::string offeredMethod;  // "wp" | "dbd"
  double offeredRho = 0.0;    // correlation the WP contract is written for
  double chosenRho = 0.0;     // correlation the GP then picks
  double gpRhoDerivative = 0.0;
  SolutionReport contract;
};

UninformedReport solve_uninformed(const UninformedScenario& u);

struct BargainingReport {
  std::string method;       // "either" (reputable) | "wp" (non-reputable)
  double gpGross = 0.0;     // totalSurplus - 2I
  double gpNetValue = 0.0;  // gpGross - 2c
  double lpValue = 0.0;     // pinned at 2I
  double chosenRho = 0.0;
  bool uniqueContract = false;
  bool wpSurplusDominatesDbd = false;  // runtime check, non-reputable case
  ContractSchedule contract;
  std::vector<std::pair<std::string, double>> contractEntries;
};

/// GP-optimal contract under the LP's break-even constraint: the
/// investor-optimal schedule scaled up until E[s_LP] = 2I. Scaling the whole
/// payout vector keeps every incentive row intact (the adverse-selection rows
/// are homogeneous, the effort rows only gain slack).
BargainingReport solve_bargaining(const PortfolioScenario& s, bool reputable);

}  // namespace lpa
