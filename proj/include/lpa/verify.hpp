#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpa {

struct VerifyResult {
  int scenarios = 0;
  int solverRuns = 0;
  int gapFailures = 0;
  int argmaxFailures = 0;
  double maxGap = 0.0;
  double seconds = 0.0;
  std::vector<std::string> messages;

  int failures() const { return gapFailures + argmaxFailures; }
  bool ok() const { return failures() == 0; }
};

/// Randomized oracle-equivalence sweep: draws valid scenarios and checks that
/// every closed-form solver matches the simplex oracle within 1e-8 and that
/// each intended strategy is an oracle best response under its contract.
VerifyResult verify_oracle_equivalence(int gridSize, uint64_t seed);

}  // namespace lpa
