#pragma once

#include <cstdint>

#include "lpa/market.hpp"
#include "lpa/scenario.hpp"

namespace lpa {

struct SamplerOptions {
  double lambdaLo = 0.25, lambdaHi = 0.85;
  double p1Lo = 0.03, p1Hi = 0.30;
  double rhoLo = 0.0, rhoHi = 1.0;
  double Rlo = 2.0, Rhi = 5.0;
  bool strictP2Positive = false;  // conditional contracts need p2 > 0
};

/// Rejection sampler over valid scenarios (I = 1, c drawn under Assumption 2
/// with margin). Deterministic for a fixed seed.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(uint64_t seed, SamplerOptions opt = {});

  PortfolioScenario next();
  ThreePointParams next_three_point();

 private:
  double uniform(double lo, double hi);

  uint64_t state_;
  SamplerOptions opt_;
};

}  // namespace lpa
