#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

/// Scenario fails one of the model assumptions or schema rules.
struct InvalidScenario : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Contract payout vector does not match the signal space it is applied to.
struct SignalMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Target strategy cannot be implemented by any feasible payout schedule.
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Whole-portfolio constructions divide by p1; undefined when p1 == 0.
struct DegenerateAdverseSelection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Three-point contract slope is undefined when p == p1.
struct SingularSlope : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No closed-form binding candidate is self-consistent.
struct NoConsistentCandidate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite-difference step crosses a regime boundary.
struct RegimeStraddle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Continuous-effort first-order condition has no interior solution.
struct NoInteriorOptimum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidCost : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Participation constraint cannot be met at any incentive-compatible contract.
struct InfeasibleParticipation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closed form and brute-force oracle disagree beyond tolerance.
struct OracleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lpa
