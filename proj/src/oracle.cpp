#include "lpa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpa/errors.hpp"

namespace lpa {

namespace {

void check_contract(const SignalSpace& space, const ContractSchedule& k) {
  if (k.kind != space.kind() ||
      k.payouts.size() != static_cast<size_t>(space.size()))
    throw SignalMismatch("contract payouts do not match the signal space");
}

}  // namespace

StrategyOutcome strategy_distribution(const Market& m, const SignalSpace& space,
                                      const GPStrategy& g) {
  const int n = m.project_count();
  StrategyOutcome out;
  out.dist.assign(static_cast<size_t>(space.size()), 0.0);
  out.effortCost = m.c() * g.effort_count();

  const std::vector<double> profProbs = m.profile_probs(g.effort);
  const std::vector<unsigned> profiles = reachable_profiles(g.effort, n);

  for (size_t pi = 0; pi < profiles.size(); ++pi) {
    const unsigned prof = profiles[pi];
    const double pProf = profProbs[prof];
    if (pProf <= 0.0) continue;
    const unsigned act = g.actions[pi];

    // Per-project cash distribution for this profile/action pair; B-project
    // successes are independent across projects conditional on types.
    std::array<const std::vector<OutcomePoint>*, 2> dists = {nullptr, nullptr};
    std::array<std::vector<OutcomePoint>, 2> safeHold;
    for (int i = 0; i < n; ++i) {
      if (act & (1u << i)) {
        const TypeOutcomes& t = m.outcomes(i);
        dists[static_cast<size_t>(i)] = (prof & (1u << i)) ? &t.good : &t.bad;
      } else {
        safeHold[static_cast<size_t>(i)] = {{m.I(), 1.0, "I"}};
        dists[static_cast<size_t>(i)] = &safeHold[static_cast<size_t>(i)];
      }
    }

    if (n == 1) {
      for (const OutcomePoint& a : *dists[0]) {
        if (a.prob <= 0.0) continue;
        out.dist[static_cast<size_t>(space.index_for({a.cash, 0.0}, 1))] +=
            pProf * a.prob;
      }
    } else {
      for (const OutcomePoint& a : *dists[0]) {
        if (a.prob <= 0.0) continue;
        for (const OutcomePoint& b : *dists[1]) {
          if (b.prob <= 0.0) continue;
          out.dist[static_cast<size_t>(space.index_for({a.cash, b.cash}, 2))] +=
              pProf * a.prob * b.prob;
        }
      }
    }
  }
  return out;
}

double expected_gp_gross(const Market& m, const SignalSpace& space,
                         const ContractSchedule& k, const GPStrategy& g) {
  check_contract(space, k);
  const StrategyOutcome so = strategy_distribution(m, space, g);
  double v = 0.0;
  for (size_t j = 0; j < so.dist.size(); ++j) v += so.dist[j] * k.payouts[j];
  return v;
}

double expected_gp_value(const Market& m, const SignalSpace& space,
                         const ContractSchedule& k, const GPStrategy& g) {
  return expected_gp_gross(m, space, k, g) - m.c() * g.effort_count();
}

TotalAndLp expected_total_and_lp_value(const Market& m, const SignalSpace& space,
                                       const ContractSchedule& k,
                                       const GPStrategy& g) {
  check_contract(space, k);
  const StrategyOutcome so = strategy_distribution(m, space, g);
  TotalAndLp out;
  double gross = 0.0;
  for (size_t j = 0; j < so.dist.size(); ++j) {
    out.total += so.dist[j] * space.at(static_cast<int>(j)).total;
    gross += so.dist[j] * k.payouts[j];
  }
  out.lpValue = out.total - gross;
  return out;
}

BestResponse best_response(const Market& m, const SignalSpace& space,
                           const ContractSchedule& k,
                           const std::vector<GPStrategy>& strategies,
                           double tieTol) {
  check_contract(space, k);
  BestResponse br;
  std::vector<double> values(strategies.size());
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < strategies.size(); ++i) {
    values[i] = expected_gp_value(m, space, k, strategies[i]);
    if (values[i] > best) {
      best = values[i];
      br.bestIndex = static_cast<int>(i);
    }
  }
  br.value = best;
  for (size_t i = 0; i < strategies.size(); ++i)
    if (values[i] >= best - tieTol) br.tieSet.push_back(static_cast<int>(i));
  return br;
}

BestResponse best_response(const Market& m, const SignalSpace& space,
                           const ContractSchedule& k, double tieTol) {
  return best_response(m, space, k, enumerate_strategies(m), tieTol);
}

bool strategy_in_argmax(const Market& m, const SignalSpace& space,
                        const ContractSchedule& k, const GPStrategy& target,
                        double tieTol) {
  const BestResponse br = best_response(m, space, k, tieTol);
  const double v = expected_gp_value(m, space, k, target);
  return v >= br.value - tieTol;
}

GPStrategy principal_favored_best_response(const Market& m, const SignalSpace& space,
                                           const ContractSchedule& k,
                                           double tieTol) {
  const std::vector<GPStrategy> strategies = enumerate_strategies(m);
  const BestResponse br = best_response(m, space, k, strategies, tieTol);
  int best = br.tieSet.front();
  double bestTotal = -std::numeric_limits<double>::infinity();
  for (int idx : br.tieSet) {
    const StrategyOutcome so =
        strategy_distribution(m, space, strategies[static_cast<size_t>(idx)]);
    double total = 0.0;
    for (size_t j = 0; j < so.dist.size(); ++j)
      total += so.dist[j] * space.at(static_cast<int>(j)).total;
    if (total > bestTotal + 1e-12) {
      bestTotal = total;
      best = idx;
    }
  }
  return strategies[static_cast<size_t>(best)];
}

LpProblem build_payout_lp(const Market& m, const SignalSpace& space,
                          const GPStrategy& target, OracleFlags flags,
                          std::vector<int>* sigOfOut) {
  const std::vector<GPStrategy> strategies = enumerate_strategies(m);
  const StrategyOutcome targetOut = strategy_distribution(m, space, target);

  // FNO: payouts at or below committed capital are fixed to zero; the LP only
  // sees the remaining signals.
  const int nSig = space.size();
  std::vector<int> varOf(static_cast<size_t>(nSig), -1);
  std::vector<int> sigOf;
  for (int j = 0; j < nSig; ++j) {
    if (flags.fno && space.at(j).total <= m.committed_capital() + 1e-12) continue;
    varOf[static_cast<size_t>(j)] = static_cast<int>(sigOf.size());
    sigOf.push_back(j);
  }
  const size_t nVar = sigOf.size();

  LpProblem lp;
  lp.objective.assign(nVar, 0.0);
  for (size_t v = 0; v < nVar; ++v)
    lp.objective[v] = targetOut.dist[static_cast<size_t>(sigOf[v])];

  auto project_row = [&](const std::vector<double>& full, double rhs,
                         const std::string& label) -> bool {
    // Returns false (and throws when impossible) if the row reduces to 0 >= rhs.
    LpRow row;
    row.coeff.assign(nVar, 0.0);
    double maxAbs = 0.0;
    for (size_t v = 0; v < nVar; ++v) {
      row.coeff[v] = full[static_cast<size_t>(sigOf[v])];
      maxAbs = std::max(maxAbs, std::abs(row.coeff[v]));
    }
    if (maxAbs < 1e-14) {
      if (rhs > 1e-12)
        throw Infeasible("target strategy dominated outright: " + label);
      return false;
    }
    row.sense = RowSense::Ge;
    row.rhs = rhs;
    row.label = label;
    lp.rows.push_back(std::move(row));
    return true;
  };

  // Incentive rows: target weakly beats every alternative.
  for (size_t h = 0; h < strategies.size(); ++h) {
    const GPStrategy& alt = strategies[h];
    if (alt.effort == target.effort && alt.actions == target.actions) continue;
    const StrategyOutcome altOut = strategy_distribution(m, space, alt);
    std::vector<double> diff(static_cast<size_t>(nSig), 0.0);
    for (int j = 0; j < nSig; ++j)
      diff[static_cast<size_t>(j)] =
          targetOut.dist[static_cast<size_t>(j)] - altOut.dist[static_cast<size_t>(j)];
    project_row(diff, targetOut.effortCost - altOut.effortCost,
                "ic " + alt.name(m.project_count()));
  }

  // Drop duplicate rows and rows implied componentwise by a kept row.
  {
    std::vector<LpRow> kept;
    for (LpRow& row : lp.rows) {
      bool redundant = false;
      for (const LpRow& k2 : kept) {
        bool implies = k2.rhs >= row.rhs - 1e-12;
        for (size_t j = 0; implies && j < row.coeff.size(); ++j)
          implies = k2.coeff[j] <= row.coeff[j] + 1e-12;
        if (implies) {
          redundant = true;
          break;
        }
      }
      if (!redundant) kept.push_back(std::move(row));
    }
    lp.rows = std::move(kept);
  }

  auto order_row = [&](int lowSig, int highSig, const std::string& label) {
    const int vLow = varOf[static_cast<size_t>(lowSig)];
    const int vHigh = varOf[static_cast<size_t>(highSig)];
    LpRow row;
    row.coeff.assign(nVar, 0.0);
    if (vHigh >= 0) row.coeff[static_cast<size_t>(vHigh)] += 1.0;
    if (vLow >= 0) row.coeff[static_cast<size_t>(vLow)] -= 1.0;
    row.sense = RowSense::Ge;
    row.rhs = 0.0;
    row.label = label;
    bool nonzero = false;
    for (double cfy : row.coeff) nonzero = nonzero || cfy != 0.0;
    if (nonzero)
      lp.rows.push_back(std::move(row));
    else if (vHigh < 0 && vLow >= 0) {
      // high side fixed at zero: forces the low payout to zero as well
      LpRow cap;
      cap.coeff.assign(nVar, 0.0);
      cap.coeff[static_cast<size_t>(vLow)] = 1.0;
      cap.sense = RowSense::Le;
      cap.rhs = 0.0;
      cap.label = label + " (zero cap)";
      lp.rows.push_back(std::move(cap));
    }
  };

  if (flags.onPathMonotone) {
    // Payout nondecreasing across on-path outcomes: every signal in a higher
    // total-cash tier at least matches every signal in the tier below.
    std::vector<int> onPath;
    for (int j = 0; j < nSig; ++j)
      if (targetOut.dist[static_cast<size_t>(j)] > 1e-12) onPath.push_back(j);
    std::sort(onPath.begin(), onPath.end(), [&space](int a, int b) {
      return space.at(a).total < space.at(b).total;
    });
    std::vector<std::vector<int>> tiers;
    for (int j : onPath) {
      if (!tiers.empty() &&
          std::abs(space.at(tiers.back().front()).total - space.at(j).total) < 1e-9)
        tiers.back().push_back(j);
      else
        tiers.push_back({j});
    }
    for (size_t t = 1; t < tiers.size(); ++t)
      for (int hi : tiers[t])
        for (int lo : tiers[t - 1])
          order_row(lo, hi, "mono " + space.at(lo).label + "<=" + space.at(hi).label);
  }

  if (flags.monotoneEverywhere) {
    for (int j = 1; j < nSig; ++j)
      order_row(j - 1, j,
                "mono-all " + space.at(j - 1).label + "<=" + space.at(j).label);
    // The robustness variant additionally pins s(R) >= s(2I) regardless of
    // how R compares with 2I; combined with the chain this sets s(R)=s(2I)
    // when R < 2I and is implied otherwise.
    if (m.project_count() == 2) {
      int sigR = -1, sig2I = -1;
      for (int j = 0; j < nSig; ++j) {
        if (space.at(j).label == "R") sigR = j;
        if (space.at(j).label == "2I") sig2I = j;
      }
      if (sigR >= 0 && sig2I >= 0) order_row(sig2I, sigR, "mono-all R>=2I");
    }
  }

  if (sigOfOut) *sigOfOut = sigOf;
  return lp;
}

OracleSolution minimize_gp_payout(const Market& m, SignalKind kind,
                                  const GPStrategy& target, OracleFlags flags) {
  const SignalSpace space(m, kind);
  std::vector<int> sigOf;
  const LpProblem lp = build_payout_lp(m, space, target, flags, &sigOf);
  const int nSig = space.size();

  const LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::Infeasible)
    throw Infeasible("no feasible payout schedule implements the target strategy");
  if (sol.status == LpStatus::Unbounded)
    throw std::logic_error("payout minimization unbounded");
  if (sol.maxResidual > 1e-10)
    throw std::logic_error("simplex self-check failed: residual " +
                           std::to_string(sol.maxResidual));

  OracleSolution out;
  out.value = sol.value;
  out.maxResidual = sol.maxResidual;
  out.contract.kind = kind;
  out.contract.fno = flags.fno;
  out.contract.monotoneEverywhere = flags.monotoneEverywhere;
  out.contract.payouts.assign(static_cast<size_t>(nSig), 0.0);
  for (size_t v = 0; v < sigOf.size(); ++v)
    out.contract.payouts[static_cast<size_t>(sigOf[v])] =
        std::max(0.0, sol.x[v]);
  for (int r : sol.binding)
    out.binding.push_back(lp.rows[static_cast<size_t>(r)].label);
  return out;
}

}  // namespace lpa
