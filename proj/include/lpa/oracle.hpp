#pragma once

#include <string>
#include <vector>

#include "lpa/market.hpp"
#include "lpa/simplex.hpp"

namespace lpa {

/// Distribution over signal indices induced by a strategy, plus its effort cost.
struct StrategyOutcome {
  std::vector<double> dist;
  double effortCost = 0.0;
};

StrategyOutcome strategy_distribution(const Market& m, const SignalSpace& space,
                                      const GPStrategy& g);

/// GP's expected value net of effort costs: E[payout] - c * |effort|.
double expected_gp_value(const Market& m, const SignalSpace& space,
                         const ContractSchedule& k, const GPStrategy& g);

/// Gross expected payout E[payout] under the strategy.
double expected_gp_gross(const Market& m, const SignalSpace& space,
                         const ContractSchedule& k, const GPStrategy& g);

struct TotalAndLp {
  double total = 0.0;    // expected portfolio cash (projects + safe holdings)
  double lpValue = 0.0;  // total - E[payout to GP]
};

TotalAndLp expected_total_and_lp_value(const Market& m, const SignalSpace& space,
                                       const ContractSchedule& k, const GPStrategy& g);

struct BestResponse {
  int bestIndex = -1;
  double value = 0.0;           // net of effort costs
  std::vector<int> tieSet;      // all indices within tieTol of the max
};

BestResponse best_response(const Market& m, const SignalSpace& space,
                           const ContractSchedule& k,
                           const std::vector<GPStrategy>& strategies,
                           double tieTol = 1e-9);
BestResponse best_response(const Market& m, const SignalSpace& space,
                           const ContractSchedule& k, double tieTol = 1e-9);

/// True if `target` attains the maximum net value over all strategies.
bool strategy_in_argmax(const Market& m, const SignalSpace& space,
                        const ContractSchedule& k, const GPStrategy& target,
                        double tieTol = 1e-9);

/// The optimal contracts leave the GP exactly indifferent on the binding
/// rows; ties are resolved in the principal's favor, i.e. toward the tie-set
/// member with the largest expected portfolio cash.
GPStrategy principal_favored_best_response(const Market& m, const SignalSpace& space,
                                           const ContractSchedule& k,
                                           double tieTol = 1e-9);

struct OracleFlags {
  bool fno = false;
  bool monotoneEverywhere = false;
  /// Payout nondecreasing across the target's on-path outcomes (by total
  /// cash). Disabled for the three-point robustness model, whose optimal
  /// contract is deliberately non-monotone.
  bool onPathMonotone = true;
};

struct OracleSolution {
  ContractSchedule contract;
  double value = 0.0;  // minimized gross expected payout under the target
  std::vector<std::string> binding;
  double maxResidual = 0.0;
};

/// Exact contract minimization: the cheapest nonnegative payout schedule under
/// which `target` weakly beats every enumerated alternative, subject to the
/// flag constraints. Throws Infeasible when no schedule implements the target.
OracleSolution minimize_gp_payout(const Market& m, SignalKind kind,
                                  const GPStrategy& target, OracleFlags flags = {});

/// The LP behind minimize_gp_payout; `sigOf` maps LP variables back to signal
/// indices (FNO-zeroed signals carry no variable). Exposed for white-box tests.
LpProblem build_payout_lp(const Market& m, const SignalSpace& space,
                          const GPStrategy& target, OracleFlags flags,
                          std::vector<int>* sigOf);

}  // namespace lpa
