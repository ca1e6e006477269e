#include "lpa/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/rng.hpp"

namespace lpa {

namespace {

constexpr long long kBlock = 4096;

struct BlockSums {
  double gp = 0.0, lp = 0.0, total = 0.0;
  double gp2 = 0.0, lp2 = 0.0, total2 = 0.0;
};

int pick_from(const std::vector<OutcomePoint>& dist, double u) {
  double acc = 0.0;
  for (size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i].prob;
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(dist.size()) - 1;
}

}  // namespace

SimReport simulate(const Market& m, const ContractSchedule& k, const GPStrategy& g,
                   long long trials, uint64_t seed,
                   const std::optional<SimAnalytic>& analytic,
                   std::ostream* trialDump, int chunks) {
  if (trials < 1) throw InvalidScenario("simulation needs at least one trial");
  if (chunks < 1) chunks = 1;
  const SignalSpace space(m, k.kind);
  if (k.payouts.size() != static_cast<size_t>(space.size()))
    throw SignalMismatch("contract payouts do not match the signal space");

  const int n = m.project_count();
  const std::vector<double> profProbs = m.profile_probs(g.effort);
  const std::vector<unsigned> profiles = reachable_profiles(g.effort, n);
  std::vector<double> cdf(profiles.size());
  double acc = 0.0;
  for (size_t i = 0; i < profiles.size(); ++i) {
    acc += profProbs[profiles[i]];
    cdf[i] = acc;
  }

  const long long nBlocks = (trials + kBlock - 1) / kBlock;
  std::vector<BlockSums> blocks(static_cast<size_t>(nBlocks));
  if (trialDump) trialDump->precision(17);

  auto run_trial = [&](long long t, BlockSums* bs) {
    CounterRng rng(seed, static_cast<uint64_t>(t));
    const double u = rng.uniform01();
    size_t pi = profiles.size() - 1;
    for (size_t i = 0; i < profiles.size(); ++i) {
      if (u < cdf[i]) {
        pi = i;
        break;
      }
    }
    const unsigned prof = profiles[pi];
    const unsigned act = g.actions[pi];

    std::array<double, 2> cash = {0.0, 0.0};
    std::array<char, 2> typeCh = {'B', 'B'};
    std::array<char, 2> actCh = {'S', 'S'};
    for (int i = 0; i < n; ++i) {
      const bool good = (prof & (1u << i)) != 0u;
      typeCh[static_cast<size_t>(i)] = good ? 'G' : 'B';
      if (act & (1u << i)) {
        actCh[static_cast<size_t>(i)] = 'I';
        const std::vector<OutcomePoint>& dist =
            good ? m.outcomes(i).good : m.outcomes(i).bad;
        const int j = dist.size() == 1 ? 0 : pick_from(dist, rng.uniform01());
        cash[static_cast<size_t>(i)] = dist[static_cast<size_t>(j)].cash;
      } else {
        cash[static_cast<size_t>(i)] = m.I();
      }
    }

    const int sig = space.index_for(cash, n);
    const double gp = k.payouts[static_cast<size_t>(sig)];
    const double total = n == 2 ? cash[0] + cash[1] : cash[0];
    const double lp = total - gp;
    bs->gp += gp;
    bs->lp += lp;
    bs->total += total;
    bs->gp2 += gp * gp;
    bs->lp2 += lp * lp;
    bs->total2 += total * total;
    if (trialDump) {
      (*trialDump) << t << "," << typeCh[0] << "," << (n == 2 ? typeCh[1] : '-')
                   << "," << actCh[0] << "," << (n == 2 ? actCh[1] : '-') << ","
                   << total << "," << gp << "," << lp << "\n";
    }
  };

  // Blocks are processed in a chunk-strided order (stand-in for a worker
  // pool) but merged strictly by block index below.
  for (int c = 0; c < chunks; ++c) {
    for (long long blk = c; blk < nBlocks; blk += chunks) {
      BlockSums* bs = &blocks[static_cast<size_t>(blk)];
      const long long lo = blk * kBlock;
      const long long hi = std::min(trials, lo + kBlock);
      for (long long t = lo; t < hi; ++t) run_trial(t, bs);
    }
  }

  BlockSums sum;
  for (const BlockSums& bs : blocks) {
    sum.gp += bs.gp;
    sum.lp += bs.lp;
    sum.total += bs.total;
    sum.gp2 += bs.gp2;
    sum.lp2 += bs.lp2;
    sum.total2 += bs.total2;
  }

  SimReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.strategyName = g.name(n);
  const double dn = static_cast<double>(trials);
  rep.empGpMean = sum.gp / dn;
  rep.empTotalMean = sum.total / dn;
  rep.empLpMean = rep.empTotalMean - rep.empGpMean;
  auto se = [dn](double s1, double s2) {
    if (dn < 2.0) return 0.0;
    const double var = std::max(0.0, (s2 - s1 * s1 / dn) / (dn - 1.0));
    return std::sqrt(var / dn);
  };
  rep.seGp = se(sum.gp, sum.gp2);
  rep.seLp = se(sum.lp, sum.lp2);
  rep.seTotal = se(sum.total, sum.total2);
  if (analytic) {
    rep.hasAnalytic = true;
    rep.gapGp = std::abs(rep.empGpMean - analytic->gp);
    rep.gapLp = std::abs(rep.empLpMean - analytic->lp);
    rep.gapTotal = std::abs(rep.empTotalMean - analytic->total);
  }
  return rep;
}

}  // namespace lpa
