#include "lpa/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpa/rng.hpp"

namespace lpa {

ScenarioSampler::ScenarioSampler(uint64_t seed, SamplerOptions opt)
    : state_(splitmix64(seed ^ 0xA5A5A5A55A5A5A5Aull)), opt_(opt) {}

double ScenarioSampler::uniform(double lo, double hi) {
  state_ = splitmix64(state_);
  return lo + (hi - lo) * to_unit_interval(state_);
}

PortfolioScenario ScenarioSampler::next() {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double I = 1.0;
    const double R = uniform(opt_.Rlo, opt_.Rhi);
    const double l1 = uniform(opt_.lambdaLo, opt_.lambdaHi);
    const double l2 = uniform(opt_.lambdaLo, opt_.lambdaHi);
    const double pCap = std::min(opt_.p1Hi, 0.9 * I / R);
    if (pCap <= opt_.p1Lo) continue;
    const double p1 = uniform(opt_.p1Lo, pCap);
    const double p2lo = opt_.strictP2Positive ? std::min(0.01, p1) : 0.0;
    const double p2 = uniform(p2lo, p1);
    const double cCap = 0.8 * std::min(l1, l2) * (R - I);
    const double c = uniform(0.05 * cCap, cCap);
    const double rho = uniform(opt_.rhoLo, opt_.rhoHi);

    PortfolioScenario s(R, I, c, {l1, p1}, {l2, p2}, rho);
    if (s.validate().all_pass()) return s;
  }
  throw std::runtime_error("scenario sampler failed to find a valid draw");
}

ThreePointParams ScenarioSampler::next_three_point() {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ThreePointParams tp;
    tp.I = 1.0;
    tp.R1 = uniform(1.6, 4.0);
    tp.R2 = uniform(1.6, 4.0);
    if (std::abs(tp.R1 - tp.R2) < 0.05) continue;
    tp.lambda = uniform(0.3, 0.85);
    tp.pGoodR1 = uniform(0.05, 0.95);
    tp.pBadR1 = uniform(0.0, 0.45);
    tp.pBadR2 = uniform(0.0, 0.45);
    if (std::abs(tp.pGoodR1 - tp.pBadR1) < 1e-3) continue;
    const double cCap = 0.8 * tp.lambda * (tp.good_mean() - tp.I);
    if (cCap <= 0.0) continue;
    tp.c = uniform(0.1 * cCap, cCap);
    try {
      tp.require_valid();
      return tp;
    } catch (const InvalidScenario&) {
      continue;
    }
  }
  throw std::runtime_error("three-point sampler failed to find a valid draw");
}

}  // namespace lpa
