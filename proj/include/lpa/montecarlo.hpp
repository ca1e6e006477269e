#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "lpa/market.hpp"
#include "lpa/oracle.hpp"

namespace lpa {

/// Analytic gross values a simulation is gapped against.
struct SimAnalytic {
  double gp = 0.0;
  double lp = 0.0;
  double total = 0.0;
};

struct SimReport {
  long long trials = 0;
  uint64_t seed = 0;
  std::string strategyName;
  double empGpMean = 0.0;
  double empLpMean = 0.0;  // empTotalMean - empGpMean by construction
  double empTotalMean = 0.0;
  double seGp = 0.0;
  double seLp = 0.0;
  double seTotal = 0.0;
  double gapGp = 0.0;
  double gapLp = 0.0;
  double gapTotal = 0.0;
  bool hasAnalytic = false;
};

/// Simulates fund realizations under a contract and strategy. Randomness is
/// counter-based per trial, and sums are accumulated per 4096-trial block and
/// merged in block order, so any block-aligned partition of the work yields
/// bit-identical reports. `chunks` only reorders block processing (it stands
/// in for a worker pool) and must not change the result.
SimReport simulate(const Market& m, const ContractSchedule& k, const GPStrategy& g,
                   long long trials, uint64_t seed,
                   const std::optional<SimAnalytic>& analytic = std::nullopt,
                   std::ostream* trialDump = nullptr, int chunks = 1);

}  // namespace lpa
