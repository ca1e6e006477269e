#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpa/closed_form.hpp"
#include "lpa/scenario.hpp"

namespace lpa {

/// Correlation threshold between the two whole-portfolio regimes; may exceed
/// 1, in which case the low-rho regime applies for every admissible rho.
double rho_star(const PortfolioScenario& s);

struct RhoDoubleStar {
  enum class Kind { Root, WpAlways, DbdAlways };
  Kind kind = Kind::Root;
  double value = 0.0;   // the root when kind == Root
  double rhoLow = 0.0;  // lower end of the admissible correlation range

  std::string kind_name() const;
};

/// Correlation at which the LP switches between deal-by-deal and
/// whole-portfolio, found by bisection on the admissible range.
RhoDoubleStar rho_double_star(const PortfolioScenario& s);

struct P2Star {
  enum class Kind { Interior, WpAlways, DbdAlways };
  Kind kind = Kind::Interior;
  double value = 0.0;

  std::string kind_name() const;
};

/// Smallest p2 in [0, p1] at which whole-portfolio contracting weakly beats
/// deal-by-deal for the LP, holding (lambda1, lambda2, p1, rho) fixed.
P2Star p2_star(const PortfolioScenario& s);

struct ComparisonReport {
  bool reputable = true;
  double dbdLpValue = 0.0;  // LP profit net of outlay
  double wpLpValue = 0.0;
  std::string preferred;  // "WP" | "DBD" | "tie"
  std::optional<double> rhoStar;
  std::optional<RhoDoubleStar> rhoDoubleStar;
  std::optional<P2Star> p2Star;
};

/// LP-value comparison of the two payment methods, with the FNO variants when
/// the GP is not reputable. Also checks the containment property: whenever
/// the reputable comparison strictly prefers WP, the non-reputable one must
/// not strictly prefer DBD.
ComparisonReport compare_methods(const PortfolioScenario& s, bool reputable);

struct SignReport {
  std::string param;
  double derivative = 0.0;
  int sign = 0;
  int expectedSign = 0;
  std::string regime;
};

/// Central finite-difference sign of the whole-portfolio GP payout in one of
/// {"p1", "lambda_max", "lambda_min", "rho"}; throws RegimeStraddle when the
/// step crosses the regime boundary and checks the predicted sign.
SignReport comparative_statics(const PortfolioScenario& s, const std::string& param,
                               double relStep = 1e-5);

struct FeasibilityReport {
  bool projectReputable[2] = {false, false};  // per-project funding, reputable contract
  bool projectFno[2] = {false, false};        // per-project funding, FNO contract
  bool wp = false;                            // portfolio participation, reputable WP
  bool wpFno = false;
  bool containmentOk = true;  // FNO feasibility implies reputable feasibility
};

FeasibilityReport feasibility(const PortfolioScenario& s);

/// Parameter sweep as CSV (`param,value,gp_expected,lp_expected,preferred,regime`);
/// grid cells that fail validation are skipped. param is one of
/// {"rho","p1","p2","lambda1","lambda2"} over the stored project order.
std::string sweep_csv(const PortfolioScenario& s, const std::string& param,
                      double from, double to, int steps, bool reputable);

}  // namespace lpa
