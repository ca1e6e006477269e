#include "lpa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpa/errors.hpp"
#include "lpa/oracle.hpp"

namespace lpa {

namespace {

constexpr int kMaxBisect = 200;
constexpr double kBisectTol = 1e-10;
constexpr double kPreferTol = 1e-10;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string RhoDoubleStar::kind_name() const {
  switch (kind) {
    case Kind::Root:
      return "root";
    case Kind::WpAlways:
      return "wp-always";
    case Kind::DbdAlways:
      return "dbd-always";
  }
  return "";
}

std::string P2Star::kind_name() const {
  switch (kind) {
    case Kind::Interior:
      return "interior";
    case Kind::WpAlways:
      return "wp-always";
    case Kind::DbdAlways:
      return "dbd-always";
  }
  return "";
}

double rho_star(const PortfolioScenario& s) {
  s.require_valid();
  return rho_star_value(s);
}

RhoDoubleStar rho_double_star(const PortfolioScenario& s) {
  s.require_valid();
  const double dbd = dbd_gp_expected(s);
  const double lo = s.rho_min_valid();

  RhoDoubleStar out;
  out.rhoLow = lo;
  auto f = [&s, dbd](double rho) {
    return wp_gp_expected(s.with_rho(rho)) - dbd;
  };

  // Monotone bracketing: the WP payout must strictly decrease over the grid
  // before we trust bisection on it.
  double prev = f(lo);
  for (int i = 1; i <= 100; ++i) {
    const double rho = lo + (1.0 - lo) * i / 100.0;
    const double cur = f(rho);
    if (cur >= prev)
      throw OracleMismatch("whole-portfolio GP payout not strictly decreasing in rho");
    prev = cur;
  }

  const double fLo = f(lo);
  const double fHi = f(1.0);
  if (fLo <= 0.0) {
    out.kind = RhoDoubleStar::Kind::WpAlways;
    return out;
  }
  if (fHi > 0.0) {
    out.kind = RhoDoubleStar::Kind::DbdAlways;
    return out;
  }

  double a = lo, b = 1.0;
  for (int it = 0; it < kMaxBisect && b - a > kBisectTol; ++it) {
    const double mid = 0.5 * (a + b);
    (f(mid) > 0.0 ? a : b) = mid;
  }
  out.kind = RhoDoubleStar::Kind::Root;
  out.value = 0.5 * (a + b);

  const double rhoStar = rho_star_value(s);
  if (rhoStar <= 1.0 && out.value > rhoStar + 1e-8)
    throw OracleMismatch("rho** exceeded rho*, contradicting the regime bound");
  return out;
}

P2Star p2_star(const PortfolioScenario& s) {
  s.require_valid();
  if (s.p1() <= 0.0)
    throw DegenerateAdverseSelection("p2* undefined at p1 = 0");
  const double wp = wp_gp_expected(s);  // independent of p2
  auto gap = [&](double p2) {
    const ProjectParams pr{s.project(1).lambda, p2};
    return wp - dbd_gp_expected(s.with_project(1, pr));
  };

  P2Star out;
  if (gap(0.0) <= 0.0) {
    out.kind = P2Star::Kind::WpAlways;
    out.value = 0.0;
    return out;
  }
  if (gap(s.p1()) > 0.0) {
    out.kind = P2Star::Kind::DbdAlways;
    out.value = s.p1();
    return out;
  }
  double a = 0.0, b = s.p1();
  for (int it = 0; it < kMaxBisect && b - a > kBisectTol; ++it) {
    const double mid = 0.5 * (a + b);
    (gap(mid) > 0.0 ? a : b) = mid;
  }
  out.kind = P2Star::Kind::Interior;
  out.value = 0.5 * (a + b);
  return out;
}

namespace {

struct MethodValues {
  double dbdLp = 0.0;
  double wpLp = 0.0;
};

// LP profit net of the 2I outlay under each method. At p1 = 0 the
// whole-portfolio closed forms are undefined and the oracle value is used
// directly.
MethodValues method_lp_values(const PortfolioScenario& s, bool reputable) {
  MethodValues v;
  if (reputable) {
    if (s.p1() > 0.0) {
      const WpCore w = wp_core(s);
      v.wpLp = w.total - w.gp - 2.0 * s.I();
    } else {
      const Market m = Market::from_scenario(s);
      const OracleSolution sol =
          minimize_gp_payout(m, SignalKind::Aggregate, first_best_strategy(2), {});
      v.wpLp = dbd_total(s) - sol.value - 2.0 * s.I();
    }
    v.dbdLp = dbd_total(s) - dbd_gp_expected(s) - 2.0 * s.I();
  } else {
    if (s.p1() > 0.0) {
      const FnoWpCore f = fno_wp_core(s);
      v.wpLp = f.total - f.gp - 2.0 * s.I();
    } else {
      const Market m = Market::from_scenario(s);
      OracleFlags flags;
      flags.fno = true;
      const OracleSolution sol = minimize_gp_payout(m, SignalKind::Aggregate,
                                                    fno_two_project_target(), flags);
      TotalAndLp tl;
      const SignalSpace space(m, SignalKind::Aggregate);
      tl = expected_total_and_lp_value(m, space, sol.contract, fno_two_project_target());
      v.wpLp = tl.lpValue - 2.0 * s.I();
    }
    v.dbdLp = dbd_fno_total(s) - dbd_fno_gp_expected(s) - 2.0 * s.I();
  }
  return v;
}

std::string preference(const MethodValues& v) {
  if (v.wpLp > v.dbdLp + kPreferTol) return "WP";
  if (v.dbdLp > v.wpLp + kPreferTol) return "DBD";
  return "tie";
}

}  // namespace

ComparisonReport compare_methods(const PortfolioScenario& s, bool reputable) {
  s.require_valid();
  const MethodValues rep = method_lp_values(s, true);
  const MethodValues fno = method_lp_values(s, false);

  // Containment (reputable WP-preference carries over to the FNO case).
  if (preference(rep) == "WP" && preference(fno) == "DBD")
    throw OracleMismatch("containment violated: reputable prefers WP but FNO prefers DBD");

  const MethodValues& chosen = reputable ? rep : fno;
  ComparisonReport out;
  out.reputable = reputable;
  out.dbdLpValue = chosen.dbdLp;
  out.wpLpValue = chosen.wpLp;
  out.preferred = preference(chosen);
  if (s.p1() > 0.0) {
    out.rhoStar = rho_star_value(s);
    out.rhoDoubleStar = rho_double_star(s);
    out.p2Star = p2_star(s);
  }
  return out;
}

SignReport comparative_statics(const PortfolioScenario& s, const std::string& param,
                               double relStep) {
  s.require_valid();
  const WpCore base = wp_core(s);

  auto scenario_at = [&](double delta) -> PortfolioScenario {
    if (param == "rho") return s.with_rho(s.rho() + delta);
    if (param == "p1") {
      ProjectParams pr = s.project(0);
      pr.p += delta;
      return s.with_project(0, pr);
    }
    if (param == "lambda_max" || param == "lambda_min") {
      const bool wantMax = param == "lambda_max";
      const int i = (s.lambda1() >= s.lambda2()) == wantMax ? 0 : 1;
      ProjectParams pr = s.project(i);
      pr.lambda += delta;
      return s.with_project(i, pr);
    }
    throw InvalidScenario("unknown comparative-statics parameter: " + param);
  };

  const double v0 = param == "rho"          ? s.rho()
                    : param == "p1"         ? s.p1()
                    : param == "lambda_max" ? s.lambda_max()
                                            : s.lambda_min();
  const double h = relStep * std::max(1.0, std::abs(v0));
  const PortfolioScenario down = scenario_at(-h);
  const PortfolioScenario up = scenario_at(h);
  if (!down.validate().all_pass() || !up.validate().all_pass())
    throw InvalidScenario("comparative-statics step leaves the valid region for " + param);

  // Both sides must sit in the same regime with the same extremal projects.
  if (param == "p1" && up.p1() < up.p2())
    throw RegimeStraddle("p1 step crosses the p1 >= p2 ordering");
  if ((param == "lambda_max" || param == "lambda_min") &&
      ((s.lambda1() >= s.lambda2()) != (up.lambda1() >= up.lambda2()) ||
       (s.lambda1() >= s.lambda2()) != (down.lambda1() >= down.lambda2())))
    throw RegimeStraddle("lambda step swaps which project is extremal");
  const WpCore wDown = wp_core(down);
  const WpCore wUp = wp_core(up);
  if (wDown.highRegime != wUp.highRegime)
    throw RegimeStraddle("finite-difference step straddles rho*; shrink the step");

  SignReport out;
  out.param = param;
  out.regime = base.highRegime ? "high-rho" : "low-rho";
  out.derivative = (wUp.gp - wDown.gp) / (2.0 * h);
  out.sign = out.derivative > 0.0 ? 1 : (out.derivative < 0.0 ? -1 : 0);

  if (param == "p1")
    out.expectedSign = 1;
  else if (param == "rho")
    out.expectedSign = -1;
  else if (param == "lambda_min")
    out.expectedSign = -1;
  else
    out.expectedSign = base.highRegime ? -1 : 1;

  if (out.sign != out.expectedSign)
    throw OracleMismatch("comparative statics sign for " + param + " is " +
                         std::to_string(out.sign) + ", expected " +
                         std::to_string(out.expectedSign));
  return out;
}

FeasibilityReport feasibility(const PortfolioScenario& s) {
  s.require_valid();
  FeasibilityReport out;
  for (int i = 0; i < 2; ++i) {
    const ProjectParams& pr = s.project(i);
    const double netLp = pr.lambda * (s.R() - s.I()) - s.c() -
                         pr.p * s.c() / (pr.lambda * (1.0 - pr.p));
    out.projectReputable[i] = netLp >= 0.0;
    const double q = pr.lambda + (1.0 - pr.lambda) * pr.p;
    out.projectFno[i] =
        s.R() - s.c() / (pr.lambda * (1.0 - pr.p)) >= s.I() / q;
    // Under Assumption 1 the FNO surplus is strictly smaller at the same GP
    // payment, so FNO feasibility is the stronger condition.
    if (out.projectFno[i] && !out.projectReputable[i]) out.containmentOk = false;
  }
  if (!out.containmentOk)
    throw OracleMismatch("FNO-feasible project that is reputable-infeasible");

  if (s.p1() > 0.0) {
    const WpCore w = wp_core(s);
    out.wp = w.total - w.gp >= 2.0 * s.I();
    const FnoWpCore f = fno_wp_core(s);
    out.wpFno = f.total - f.gp >= 2.0 * s.I();
  } else {
    out.wp = out.wpFno = false;
  }
  return out;
}

std::string sweep_csv(const PortfolioScenario& s, const std::string& param,
                      double from, double to, int steps, bool reputable) {
  s.require_valid();
  if (steps < 1) throw InvalidScenario("sweep needs at least one step");

  std::ostringstream os;
  os << "param,value,gp_expected,lp_expected,preferred,regime\n";
  for (int i = 0; i < steps; ++i) {
    const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1.0);
    PortfolioScenario cell = s;
    try {
      if (param == "rho") {
        cell = s.with_rho(v);
      } else if (param == "p1") {
        cell = s.with_project(0, {s.project(0).lambda, v});
      } else if (param == "p2") {
        cell = s.with_project(1, {s.project(1).lambda, v});
      } else if (param == "lambda1") {
        cell = s.with_project(0, {v, s.project(0).p});
      } else if (param == "lambda2") {
        cell = s.with_project(1, {v, s.project(1).p});
      } else {
        throw InvalidScenario("unknown sweep parameter: " + param);
      }
      if (!cell.validate().all_pass()) continue;
      MethodValues mv = method_lp_values(cell, reputable);
      double gp = 0.0, lp = 0.0;
      std::string regime;
      if (reputable) {
        const WpCore w = wp_core(cell);
        gp = w.gp;
        lp = w.total - w.gp;
        regime = w.highRegime ? "high-rho" : "low-rho";
      } else {
        const FnoWpCore f = fno_wp_core(cell);
        gp = f.gp;
        lp = f.total - f.gp;
        regime = f.highRegime ? "high-rho" : "low-rho";
      }
      os << param << "," << fmt12(v) << "," << fmt12(gp) << "," << fmt12(lp)
         << "," << preference(mv) << "," << regime << "\n";
    } catch (const DegenerateAdverseSelection&) {
      continue;
    }
  }
  return os.str();
}

}  // namespace lpa
