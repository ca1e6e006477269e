// Acceptance suite: every release-gating property, one pass/fail line each.
// Tolerances are pinned in code next to each check.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lpa/analysis.hpp"
#include "lpa/closed_form.hpp"
#include "lpa/errors.hpp"
#include "lpa/extensions.hpp"
#include "lpa/json_io.hpp"
#include "lpa/montecarlo.hpp"
#include "lpa/oracle.hpp"
#include "lpa/sampling.hpp"
#include "lpa/verify.hpp"

using namespace lpa;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", idx, what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// ---- criteria 1 & 2: oracle equivalence and best-response membership ------

void criteria_1_2() {
  const double t0 = now_seconds();
  const VerifyResult res = verify_oracle_equivalence(200, 7);
  const double dt = now_seconds() - t0;
  report(1, res.gapFailures == 0 && res.maxGap <= 1e-8 && dt < 60.0,
         fmt("oracle equivalence on %d scenarios / %d solver runs: max gap %.2e "
             "(tol 1e-8), %.1f s (< 60 s)",
             res.scenarios, res.solverRuns, res.maxGap, dt));
  report(2, res.argmaxFailures == 0,
         fmt("best-response membership under every closed-form contract: %d "
             "violations (tie tolerance 1e-9)",
             res.argmaxFailures));
  for (const std::string& msg : res.messages) std::printf("       %s\n", msg.c_str());
}

// ---- criterion 3: whole-portfolio structure and regime boundary -----------

void criterion_3() {
  ScenarioSampler sampler(31);
  int structureBad = 0, boundaryBad = 0, continuityBad = 0, boundaryChecked = 0;
  for (int i = 0; i < 100; ++i) {
    const PortfolioScenario s = sampler.next();
    const WpCore w = wp_core(s);
    const double ulp = 4.0 * 2.2e-16;
    if (std::abs(s.p1() * w.y - w.z) > ulp * std::max(1.0, w.z) ||
        std::abs(s.p1() * s.p1() * w.x - w.z) > ulp * std::max(1.0, w.z))
      ++structureBad;

    const double cap = s.p1() * s.c() / (w.co.lambdaMax * (1.0 - s.p1()));
    const bool inHigh = s.rho() >= w.rhoStar;
    const bool belowCap = w.z <= cap * (1.0 + 1e-12);
    if (inHigh != belowCap && std::abs(w.z - cap) > 1e-9) ++boundaryBad;

    if (w.rhoStar > s.rho_min_valid() + 1e-6 && w.rhoStar < 1.0 - 1e-6) {
      ++boundaryChecked;
      const double lo = wp_gp_expected(s.with_rho(w.rhoStar - 1e-12));
      const double hi = wp_gp_expected(s.with_rho(w.rhoStar + 1e-12));
      if (std::abs(hi - lo) > 1e-9) ++continuityBad;
    }
  }
  report(3, structureBad == 0 && boundaryBad == 0 && continuityBad == 0,
         fmt("whole-portfolio structure z=p1*y=p1^2*x (4 ulp) on 100 draws, regime "
             "bound z<=p1*c/(lmax(1-p1)) iff rho>=rho*, continuity at rho* to 1e-9 "
             "(%d boundary draws): %d/%d/%d violations",
             boundaryChecked, structureBad, boundaryBad, continuityBad));
}

// ---- criterion 4: rho-monotonicity, constant surplus, rho** <= rho* -------

void criterion_4() {
  ScenarioSampler sampler(32);
  int monotoneBad = 0, surplusBad = 0, orderBad = 0;
  for (int i = 0; i < 30; ++i) {
    const PortfolioScenario s = sampler.next();
    const double lo = s.rho_min_valid();
    double prevGp = 0.0, total0 = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double rho = lo + (1.0 - lo) * k / 100.0;
      const WpCore w = wp_core(s.with_rho(rho));
      if (k == 0) {
        total0 = w.total;
      } else {
        if (w.gp >= prevGp) ++monotoneBad;
        if (std::abs(w.total - total0) > 1e-9) ++surplusBad;
      }
      prevGp = w.gp;
    }
    const RhoDoubleStar rr = rho_double_star(s);
    const double rhoStar = rho_star_value(s);
    if (rr.kind == RhoDoubleStar::Kind::Root && rhoStar <= 1.0 &&
        rr.value > rhoStar + 1e-8)
      ++orderBad;
  }
  report(4, monotoneBad == 0 && surplusBad == 0 && orderBad == 0,
         fmt("30 scenarios x 101-point rho-grid: WP gp strictly decreasing "
             "(%d violations), surplus constant to 1e-9 (%d), rho** <= rho* (%d)",
             monotoneBad, surplusBad, orderBad));
}

// ---- criterion 5: comparative-statics sign table in both regimes -----------

void criterion_5() {
  SamplerOptions opt;
  opt.strictP2Positive = true;
  ScenarioSampler sampler(33, opt);
  int checked = 0, bad = 0;
  while (checked < 50) {
    const PortfolioScenario s = sampler.next();
    if (std::abs(s.lambda1() - s.lambda2()) < 0.05) continue;
    if (s.p1() - s.p2() < 0.02) continue;
    const double rhoStar = rho_star_value(s);
    const double lo = s.rho_min_valid();
    if (rhoStar < lo + 0.08 || rhoStar > 0.92) continue;
    const PortfolioScenario high = s.with_rho(std::min(1.0, rhoStar + 0.05));
    const PortfolioScenario low = s.with_rho(std::max(lo, rhoStar - 0.05));
    ++checked;
    for (const char* param : {"p1", "lambda_max", "lambda_min"}) {
      for (const PortfolioScenario* sc : {&high, &low}) {
        try {
          comparative_statics(*sc, param, 1e-5);  // throws on a wrong sign
        } catch (const RegimeStraddle&) {
          // step landed on a boundary; shrink once, then count any failure
          try {
            comparative_statics(*sc, param, 1e-7);
          } catch (const std::exception&) {
            ++bad;
          }
        } catch (const std::exception&) {
          ++bad;
        }
      }
    }
  }
  report(5, bad == 0,
         fmt("comparative-statics sign table, 6 checks per scenario on %d "
             "two-regime scenarios: %d sign violations",
             checked, bad));
}

// ---- criterion 6: FNO payout identity and FNO surplus slope ----------------

void criterion_6() {
  ScenarioSampler sampler(34);
  int identityBad = 0, slopeBad = 0;
  for (int i = 0; i < 100; ++i) {
    const PortfolioScenario s = sampler.next();
    const WpCore w = wp_core(s);
    const FnoWpCore f = fno_wp_core(s);
    if (std::abs(f.y - w.y) > 1e-10 * std::max(1.0, w.y)) ++identityBad;

    const double lo = s.rho_min_valid();
    const double rho = 0.5 * (lo + 1.0);
    const double h = 1e-6;
    if (rho - h <= lo || rho + h >= 1.0) continue;
    const double up = fno_wp_core(s.with_rho(rho + h)).total;
    const double dn = fno_wp_core(s.with_rho(rho - h)).total;
    const double fd = (up - dn) / (2.0 * h);
    const double analytic = s.lambda_min() * (s.p1() * s.R() - s.I());
    if (std::abs(fd - analytic) > 1e-6 * std::max(1.0, std::abs(analytic)))
      ++slopeBad;
  }
  report(6, identityBad == 0 && slopeBad == 0,
         fmt("FNO identity on 100 draws: s_fno(R+I)=s(R+I) to 1e-10 (%d violations), "
             "FNO surplus slope = lmin(p1*R-I) within 1e-6 relative (%d)",
             identityBad, slopeBad));
}

// ---- criterion 7: WP-preference containment on a 20 x 20 x 10 grid ---------

void criterion_7() {
  int cells = 0, violations = 0;
  for (int a = 0; a < 20; ++a) {
    const double l1 = 0.30 + a * (0.80 - 0.30) / 19.0;
    const double l2 = std::min(0.95, l1 + 0.15);
    for (int b = 0; b < 20; ++b) {
      const double p1 = 0.02 + b * (0.30 - 0.02) / 19.0;
      const double p2 = 0.5 * p1;
      for (int r = 0; r < 10; ++r) {
        const double rho = r / 9.0;
        const PortfolioScenario s(3.0, 1.0, 0.06, {l1, p1}, {l2, p2}, rho);
        if (!s.validate().all_pass()) continue;
        ++cells;
        const bool repWp = wp_gp_expected(s) <= dbd_gp_expected(s) + 1e-10;
        const FnoWpCore f = fno_wp_core(s);
        const double fnoWpLp = f.total - f.gp;
        const double fnoDbdLp = dbd_fno_total(s) - dbd_fno_gp_expected(s);
        const bool fnoPrefersDbd = fnoDbdLp > fnoWpLp + 1e-10;
        if (repWp && fnoPrefersDbd) ++violations;
      }
    }
  }
  report(7, violations == 0 && cells >= 2000,
         fmt("WP-preference containment on %d valid grid cells: %d violations", cells,
             violations));
}

// ---- criterion 8: conditional contract ------------------------------------

void criterion_8() {
  SamplerOptions opt;
  opt.strictP2Positive = true;
  ScenarioSampler sampler(35, opt);
  int shapeChecked = 0, shapeBad = 0, lossBad = 0, eqChecked = 0, eqBad = 0;
  int cornerCount = 0, scenarios = 0;
  while (scenarios < 25) {
    const PortfolioScenario s = sampler.next();
    ++scenarios;
    double prevLoss = 1e300;
    for (int k = 1; k <= 8; ++k) {
      const double p2 = s.p1() * k / 8.0;
      const PortfolioScenario cell = s.with_project(1, {s.project(1).lambda, p2});
      const SolutionReport cond = solve_conditional(cell);
      const double wpGp = wp_gp_expected(cell);
      // The GP's extra rent under whole-portfolio relative to conditional
      // shrinks as p2 rises and vanishes at p2 = p1.
      const double loss = wpGp - cond.gpExpected;
      if (loss < -1e-9 || loss > prevLoss + 1e-9) ++lossBad;
      prevLoss = loss;
      if (cond.regime == "oracle-corner") {
        ++cornerCount;
      } else {
        ++shapeChecked;
        double z = 0, y1 = 0, y2 = 0, x = 0;
        for (const auto& [label, v] : cond.contractEntries) {
          if (label == "I,I") z = v;
          if (label == "R,I") y1 = v;
          if (label == "I,R") y2 = v;
          if (label == "R,R") x = v;
        }
        const double tol = 4.0 * 2.2e-16 * std::max(1.0, x);
        if (std::abs(z - cell.p1() * y1) > tol || std::abs(z - cell.p2() * y2) > tol ||
            std::abs(z - cell.p1() * cell.p2() * x) > tol)
          ++shapeBad;
        if (k == 8) {
          ++eqChecked;
          if (std::abs(cond.gpExpected - wpGp) > 1e-9) ++eqBad;
        }
      }
    }
  }
  report(8, shapeBad == 0 && lossBad == 0 && eqBad == 0 && shapeChecked >= 60 &&
             eqChecked >= 10,
         fmt("conditional: shape z=p1*y1=p2*y2=p1*p2*x on %d closed-form solves "
             "(%d violations; %d corner draws served by the oracle), efficiency "
             "loss wp-cond nonincreasing in p2 and >= 0 (%d violations), equals "
             "WP at p2=p1 to 1e-9 on %d high-regime draws (%d violations)",
             shapeChecked, shapeBad, cornerCount, lossBad, eqChecked, eqBad));
}

// ---- criterion 9: power-cost dominance --------------------------------------

void criterion_9() {
  int points = 0, dominanceBad = 0, witnessBad = 0, lambdaBad = 0;
  for (double a : {0.8, 1.2, 2.0, 3.5}) {
    for (double b : {0.8, 1.5, 2.5, 4.0}) {
      for (double m : {2.2, 3.0, 4.5, 6.0, 8.0}) {
        for (double ri : {0.5, 1.0, 2.0, 3.0}) {
          if (std::min(a, b) * m <= ri) continue;
          ++points;
          const PowerCostPair costs = PowerCostPair::make(a, b, m, 1.0 + ri, 1.0);
          try {
            compare_power(costs);  // throws unless WP strictly dominates
          } catch (const std::exception&) {
            ++dominanceBad;
          }
          const double C = costs.cost_ratio_root();
          const double d = std::pow(C, 1.0 / (m - 1.0));
          const double lhs = std::pow(1.0 + std::pow(d, m - 1.0), m);
          const double rhs = std::pow(1.0 + std::pow(d, m), m - 1.0);
          if (!(lhs > rhs)) ++witnessBad;

          // Closed-form efforts against golden-section optima.
          const ContinuousDbdReport dbd =
              solve_continuous_dbd(1.0 + ri, 1.0, costs.a, m, 0.0);
          const double dbdGold = golden_max(
              [&](double lam) { return lam * ri - costs.a * m * std::pow(lam, m); },
              1e-9, 1.0);
          const ContinuousWpReport wp = solve_continuous_wp(costs);
          const double wpGold = golden_max(
              [&](double lam) {
                return (1.0 + C) * lam * ri - costs.a * m * std::pow(lam, m);
              },
              1e-9, 1.0);
          if (std::abs(dbd.lambdaStar - dbdGold) > 1e-8 ||
              std::abs(wp.lambdaA - wpGold) > 1e-8)
            ++lambdaBad;
        }
      }
    }
  }
  report(9, points >= 100 && dominanceBad == 0 && witnessBad == 0 && lambdaBad == 0,
         fmt("power costs on %d (a,b,m,R-I) points: WP > DBD strictly (%d violations), "
             "witness inequality (%d), closed-form lambda vs golden section "
             "within 1e-8 (%d)",
             points, dominanceBad, witnessBad, lambdaBad));
}

// ---- criterion 10: monotone-everywhere variant ------------------------------

void criterion_10() {
  SamplerOptions opt;
  opt.strictP2Positive = true;
  opt.p1Hi = 0.25;
  ScenarioSampler sampler(36, opt);
  int gapBad = 0, corners = 0;
  for (int i = 0; i < 100; ++i) {
    const PortfolioScenario s = sampler.next();
    try {
      const SolutionReport rep = solve_wp_monotone(s);
      if (rep.regime == "oracle-corner") ++corners;
      if (rep.oracleGap > 1e-8) ++gapBad;
    } catch (const std::exception&) {
      ++gapBad;
    }
  }

  // rho-monotonicity holds on the binding pattern the closed form (and the
  // paper's proof) covers; paths crossing the corner slice are excluded and
  // counted. See the decisions ledger for a counterexample inside the slice.
  int clean = 0, skipped = 0, monoBad = 0;
  ScenarioSampler sampler2(37, opt);
  while (clean < 15 && clean + skipped < 200) {
    const PortfolioScenario s = sampler2.next();
    const double lo = s.rho_min_valid();
    std::vector<double> gp;
    bool corner = false;
    for (int k = 0; k < 50 && !corner; ++k) {
      const double rho = lo + (1.0 - lo) * k / 49.0;
      const SolutionReport rep = solve_wp_monotone(s.with_rho(rho));
      corner = rep.regime == "oracle-corner";
      gp.push_back(rep.gpExpected);
    }
    if (corner) {
      ++skipped;
      continue;
    }
    ++clean;
    for (size_t k = 1; k < gp.size(); ++k)
      if (gp[k] > gp[k - 1] + 1e-9) ++monoBad;
  }
  report(10, gapBad == 0 && monoBad == 0 && clean >= 15,
         fmt("monotone-everywhere (p1 <= 1/4): oracle agreement to 1e-8 on 100 draws "
             "(%d failures; %d corner draws via oracle), gp nonincreasing in rho "
             "over 50-point grids on %d closed-form scenarios (%d violations, "
             "%d corner-crossing paths excluded)",
             gapBad, corners, clean, monoBad, skipped));
}

// ---- criterion 11: three-point corner rule ----------------------------------

void criterion_11() {
  ScenarioSampler sampler(38);
  int solved = 0, mismatches = 0, gapBad = 0;
  while (solved < 100) {
    const ThreePointParams tp = sampler.next_three_point();
    SolutionReport rep;
    try {
      rep = solve_three_point_single(tp);
    } catch (const Infeasible&) {
      continue;
    } catch (const SingularSlope&) {
      continue;
    }
    ++solved;
    if (rep.oracleGap > 1e-8) ++gapBad;
    const Market m = Market::single_three_point(tp);
    OracleFlags flags;
    flags.onPathMonotone = false;
    const OracleSolution sol =
        minimize_gp_payout(m, SignalKind::Aggregate, first_best_strategy(1), flags);
    const SignalSpace space(m, SignalKind::Aggregate);
    const double x = sol.contract.payouts[static_cast<size_t>(space.index_of_label("R1"))];
    const double y = sol.contract.payouts[static_cast<size_t>(space.index_of_label("R2"))];
    const bool oracleR2zero = y <= 1e-9 && x > 1e-9;
    const bool oracleR1zero = x <= 1e-9 && y > 1e-9;
    const bool repR2zero = rep.regime == "corner-R2-zero";
    if (!((oracleR2zero && repR2zero) || (oracleR1zero && !repR2zero))) ++mismatches;
  }
  report(11, mismatches == 0 && gapBad == 0,
         fmt("three-point corner rule vs 3-outcome oracle on %d admissible draws: "
             "%d corner mismatches, %d value gaps beyond 1e-8",
             solved, mismatches, gapBad));
}

// ---- criterion 12: Monte Carlo ---------------------------------------------

void criterion_12() {
  const double t0 = now_seconds();
  ScenarioSampler sampler(39, SamplerOptions{.strictP2Positive = true});
  int outside = 0, nondeterministic = 0;
  for (int i = 0; i < 20; ++i) {
    const PortfolioScenario s = sampler.next();
    SolutionReport rep;
    GPStrategy target;
    switch (i % 4) {
      case 0:
        rep = solve_wp(s);
        target = first_best_strategy(2);
        break;
      case 1:
        rep = solve_fno_wp(s);
        target = fno_two_project_target();
        break;
      case 2:
        rep = solve_conditional(s);
        target = first_best_strategy(2);
        break;
      default:
        rep = solve_dbd_portfolio(s);
        target = first_best_strategy(2);
        break;
    }
    const Market m = Market::from_scenario(s);
    const SimAnalytic analytic{rep.gpExpected, rep.lpExpected, rep.totalSurplus};
    const uint64_t seed = 5000 + static_cast<uint64_t>(i);
    const SimReport sim = simulate(m, rep.contract, target, 100000, seed, analytic);
    if (sim.gapGp > 4.0 * std::max(sim.seGp, 1e-12)) ++outside;
    const SimReport again = simulate(m, rep.contract, target, 100000, seed, analytic);
    if (dump_json(sim_report_to_json(sim)) != dump_json(sim_report_to_json(again)))
      ++nondeterministic;
  }
  const double dt = now_seconds() - t0;
  report(12, outside == 0 && nondeterministic == 0 && dt < 120.0,
         fmt("Monte Carlo, 20 scenario/contract pairs at 1e5 trials: GP mean "
             "within 4 SE (%d outside), byte-identical reruns (%d differ), "
             "%.1f s (< 120 s)",
             outside, nondeterministic, dt));
}

}  // namespace

int main() {
  criteria_1_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%d of 12 criteria passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
