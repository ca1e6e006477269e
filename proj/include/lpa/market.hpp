#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lpa/scenario.hpp"

namespace lpa {

/// One point of an investment-outcome distribution.
struct OutcomePoint {
  double cash = 0.0;
  double prob = 0.0;
  std::string label;
};

/// Cash distribution of an invested project, by realized type.
struct TypeOutcomes {
  std::vector<OutcomePoint> good;
  std::vector<OutcomePoint> bad;
};

/// Three-point return distribution for a single project (robustness model):
/// both types pay in {0, R1, R2}; the good type with (0, pGoodR1, 1-pGoodR1),
/// the bad type with (1-pBadR1-pBadR2, pBadR1, pBadR2).
struct ThreePointParams {
  double R1 = 0.0;
  double R2 = 0.0;
  double I = 0.0;
  double c = 0.0;
  double lambda = 0.0;
  double pGoodR1 = 0.0;
  double pBadR1 = 0.0;
  double pBadR2 = 0.0;

  double good_mean() const { return pGoodR1 * R1 + (1.0 - pGoodR1) * R2; }
  double bad_mean() const { return pBadR1 * R1 + pBadR2 * R2; }

  void require_valid() const;
};

/// Project set the oracle enumerates over: one or two projects, each with
/// type-dependent invested-cash distributions, a safe option paying I, binary
/// effort at cost c per project, and (for two projects) type correlation rho.
class Market {
 public:
  static Market from_scenario(const PortfolioScenario& s);
  static Market single_binary(double R, double I, double c, ProjectParams p);
  static Market single_three_point(const ThreePointParams& tp);
  /// Two three-point projects whose bad types pay only R1 (first) / R2
  /// (second); good-type return draws are independent across projects.
  static Market two_project_three_point(double R1, double R2, double I, double c,
                                        double lambda1, double pGood1, double pBad1,
                                        double lambda2, double pGood2, double pBad2,
                                        double rho);

  int project_count() const { return static_cast<int>(projects_.size()); }
  double I() const { return I_; }
  double c() const { return c_; }
  double rho() const { return rho_; }
  double lambda(int i) const { return lambdas_[static_cast<size_t>(i)]; }
  double committed_capital() const { return I_ * project_count(); }
  const TypeOutcomes& outcomes(int i) const { return projects_[static_cast<size_t>(i)]; }

  /// Probability of each type profile (bit i set = project i good) under the
  /// given effort mask; zero for profiles unreachable without effort.
  std::vector<double> profile_probs(unsigned effortMask) const;

 private:
  double I_ = 0.0, c_ = 0.0, rho_ = 0.0;
  std::vector<double> lambdas_;
  std::vector<TypeOutcomes> projects_;
};

enum class SignalKind { Aggregate, PerProject };

/// One contractible signal: the per-project cash vector and its total. For
/// aggregate signal spaces several cash vectors may map to the same signal.
struct Signal {
  std::array<double, 2> parts = {0.0, 0.0};
  double total = 0.0;
  std::string label;
};

/// The finite set of contractible signals for a market, ordered by total cash
/// (per-project spaces break ties lexicographically by parts).
class SignalSpace {
 public:
  SignalSpace(const Market& m, SignalKind kind);

  SignalKind kind() const { return kind_; }
  int size() const { return static_cast<int>(signals_.size()); }
  const Signal& at(int i) const { return signals_[static_cast<size_t>(i)]; }

  /// Signal index realized by a per-project cash vector.
  int index_for(const std::array<double, 2>& parts, int nProjects) const;
  /// Lookup by total cash (aggregate spaces) — throws SignalMismatch if absent.
  int index_of_total(double cash) const;
  int index_of_label(const std::string& label) const;

 private:
  SignalKind kind_;
  std::vector<Signal> signals_;
};

/// Nonnegative GP payout per signal plus the constraint flags it was designed
/// under. `payouts` is aligned with SignalSpace(market, kind).
struct ContractSchedule {
  SignalKind kind = SignalKind::Aggregate;
  std::vector<double> payouts;
  bool fno = false;
  bool monotoneEverywhere = false;
};

/// Effort subset plus an investment policy on the type profiles reachable
/// under that effort (profiles listed ascending by good-bitmask).
struct GPStrategy {
  unsigned effort = 0;
  std::vector<unsigned> actions;  // invest-bitmask per reachable profile

  int effort_count() const;
  unsigned action_for_profile(unsigned profile, int nProjects) const;
  std::string name(int nProjects) const;
};

/// Profiles reachable under an effort mask (good bits only where effort was
/// exerted), ascending.
std::vector<unsigned> reachable_profiles(unsigned effortMask, int nProjects);

/// Every distinct (effort, policy) pair. For a single project the two
/// strategies that exert effort and then treat a good draw as safe are
/// dropped: each is beaten by a no-effort strategy mix for every contract.
std::vector<GPStrategy> enumerate_strategies(const Market& m);

/// Convenience targets.
GPStrategy first_best_strategy(int nProjects);           // invest exactly the good projects
GPStrategy fno_two_project_target();                     // first-best except invest project 1 at BB
GPStrategy invest_always_single();                       // effort, invest regardless of type

}  // namespace lpa
