#include "lpa/verify.hpp"

#include <chrono>
#include <cmath>

#include "lpa/closed_form.hpp"
#include "lpa/errors.hpp"
#include "lpa/oracle.hpp"
#include "lpa/sampling.hpp"

namespace lpa {

namespace {

struct Case {
  SolutionReport report;
  Market market;
  SignalKind kind;
  GPStrategy target;
};

}  // namespace

VerifyResult verify_oracle_equivalence(int gridSize, uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyResult out;

  SamplerOptions opt;
  opt.strictP2Positive = true;
  ScenarioSampler sampler(seed, opt);

  for (int i = 0; i < gridSize; ++i) {
    const PortfolioScenario s = sampler.next();
    ++out.scenarios;

    std::vector<Case> cases;
    auto attempt = [&](const char* name, auto&& fn) {
      try {
        cases.push_back(fn());
        ++out.solverRuns;
      } catch (const OracleMismatch& e) {
        ++out.gapFailures;
        out.messages.push_back(std::string(name) + ": " + e.what());
      }
    };

    attempt("dbd-single", [&] {
      return Case{solve_dbd_single(s.R(), s.I(), s.c(), s.project(0)),
                  Market::single_binary(s.R(), s.I(), s.c(), s.project(0)),
                  SignalKind::Aggregate, first_best_strategy(1)};
    });
    attempt("fno-single", [&] {
      return Case{solve_fno_single(s.R(), s.I(), s.c(), s.project(1)),
                  Market::single_binary(s.R(), s.I(), s.c(), s.project(1)),
                  SignalKind::Aggregate, invest_always_single()};
    });
    attempt("wp", [&] {
      return Case{solve_wp(s), Market::from_scenario(s), SignalKind::Aggregate,
                  first_best_strategy(2)};
    });
    attempt("fno-wp", [&] {
      return Case{solve_fno_wp(s), Market::from_scenario(s), SignalKind::Aggregate,
                  fno_two_project_target()};
    });
    attempt("conditional", [&] {
      return Case{solve_conditional(s), Market::from_scenario(s),
                  SignalKind::PerProject, first_best_strategy(2)};
    });

    for (const Case& cs : cases) {
      out.maxGap = std::max(out.maxGap, cs.report.oracleGap);
      const SignalSpace space(cs.market, cs.kind);
      if (!strategy_in_argmax(cs.market, space, cs.report.contract, cs.target)) {
        ++out.argmaxFailures;
        out.messages.push_back(cs.report.method +
                               ": intended strategy not a best response");
      }
    }
  }

  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace lpa
