#pragma once

#include <array>
#include <string>
#include <vector>

#include "lpa/errors.hpp"

namespace lpa {

/// One risky project: effort raises the type-G probability to `lambda`;
/// a type-B project succeeds with probability `p`.
struct ProjectParams {
  double lambda = 0.0;
  double p = 0.0;
};

/// Effort subsets for the two-project fund (bit i set = effort on stored project i).
enum class EffortSet : unsigned { None = 0u, First = 1u, Second = 2u, Both = 3u };

inline unsigned effort_mask(EffortSet e) { return static_cast<unsigned>(e); }

/// Probability over the four type profiles. Indexing follows the stored
/// project order: pGB = P[project 1 good, project 2 bad].
struct JointTypeDistribution {
  double pGG = 0.0;
  double pGB = 0.0;
  double pBG = 0.0;
  double pBB = 0.0;

  double sum() const { return pGG + pGB + pBG + pBB; }
  double marginal1() const { return pGG + pGB; }
  double marginal2() const { return pGG + pBG; }
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_pass() const;
  std::string failure_summary() const;
};

/// Two-project fund primitives. Projects are stored in p-descending order so
/// "project 1" always carries the tighter adverse-selection problem; the
/// position each project had at construction is kept for reporting.
class PortfolioScenario {
 public:
  PortfolioScenario(double R, double I, double c, ProjectParams first,
                    ProjectParams second, double rho);

  double R() const { return R_; }
  double I() const { return I_; }
  double c() const { return c_; }
  double rho() const { return rho_; }

  /// Stored order: project(0).p >= project(1).p.
  const ProjectParams& project(int i) const { return projects_[static_cast<size_t>(i)]; }
  /// 0-based position the stored project had in the constructor call.
  int original_index(int i) const { return original_index_[static_cast<size_t>(i)]; }

  double lambda1() const { return projects_[0].lambda; }
  double lambda2() const { return projects_[1].lambda; }
  double p1() const { return projects_[0].p; }
  double p2() const { return projects_[1].p; }
  double lambda_min() const;
  double lambda_max() const;

  /// Smallest correlation keeping pBB >= 0 (validity lower bound for rho sweeps).
  double rho_min_valid() const;

  PortfolioScenario with_rho(double rho) const;
  PortfolioScenario with_project(int i, ProjectParams p) const;

  /// Runs every model check; reports and never throws.
  ValidationReport validate() const;
  /// Throws InvalidScenario listing the failing checks.
  void require_valid() const;

  /// Type-profile distribution under the given effort subset. Projects
  /// without effort are bad with probability one.
  JointTypeDistribution joint_type_distribution(EffortSet effort) const;

  /// The six distinct portfolio cash outcomes, ascending.
  std::array<double, 6> aggregate_outcomes() const;

 private:
  double R_, I_, c_, rho_;
  std::array<ProjectParams, 2> projects_;
  std::array<int, 2> original_index_;
};

/// Coefficients shared by the whole-portfolio formulas.
///   alpha = rho*lambda_min, beta = lambda1+lambda2-2*rho*lambda_min,
///   gamma = 1-lambda1-lambda2+rho*lambda_min, betaTilde = beta + p1*gamma,
///   theta_i = lambda_i + p1*(1-lambda_i).
struct DerivedCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double betaTilde = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double lambdaMin = 0.0;
  double lambdaMax = 0.0;

  double theta_max() const { return theta1 > theta2 ? theta1 : theta2; }

  static DerivedCoefficients from(const PortfolioScenario& s);
};

/// Free-standing form of PortfolioScenario::validate for report-style callers.
ValidationReport validate_scenario(const PortfolioScenario& s);

}  // namespace lpa
