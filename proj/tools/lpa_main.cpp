#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lpa/analysis.hpp"
#include "lpa/closed_form.hpp"
#include "lpa/errors.hpp"
#include "lpa/extensions.hpp"
#include "lpa/json_io.hpp"
#include "lpa/montecarlo.hpp"
#include "lpa/oracle.hpp"
#include "lpa/sampling.hpp"
#include "lpa/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitOracle = 4;

struct SolveArgs {
  std::string scenarioPath;
  std::string method = "wp";
  bool reputable = true;
};

lpa::SolutionReport dispatch_solve(const lpa::ScenarioFile& file,
                                   const std::string& method, bool reputable) {
  const lpa::PortfolioScenario& s = file.scenario;
  if (method == "dbd")
    return reputable ? lpa::solve_dbd_portfolio(s) : lpa::solve_dbd_fno_portfolio(s);
  if (method == "wp")
    return reputable ? lpa::solve_wp(s) : lpa::solve_fno_wp(s);
  if (method == "wp-fno") return lpa::solve_fno_wp(s);
  if (method == "conditional") return lpa::solve_conditional(s);
  if (method == "wp-monotone") return lpa::solve_wp_monotone(s);
  if (method == "three-point") {
    if (!file.threePoint)
      throw lpa::InvalidScenario(
          "method three-point needs a \"three_point\" section in the scenario file");
    return lpa::solve_three_point_single(*file.threePoint);
  }
  throw lpa::InvalidScenario("unknown method: " + method);
}

void emit(const lpa::ordered_json& j) { std::cout << lpa::dump_json(j); }

int run_solve(const SolveArgs& args, const lpa::ScenarioFile& file) {
  if (args.method == "continuous") {
    if (!file.powerCost)
      throw lpa::InvalidScenario(
          "method continuous needs a \"power_cost\" section in the scenario file");
    const lpa::PowerCostSpec& pc = *file.powerCost;
    const lpa::PortfolioScenario& s = file.scenario;
    lpa::ordered_json j;
    const lpa::ContinuousDbdReport d1 = lpa::solve_continuous_dbd(
        s.R(), s.I(), pc.a, pc.m, s.project(0).p);
    const lpa::ContinuousDbdReport d2 = lpa::solve_continuous_dbd(
        s.R(), s.I(), pc.b, pc.m, s.project(1).p);
    auto dbd_json = [](const lpa::ContinuousDbdReport& d) {
      lpa::ordered_json x;
      x["lambda_star"] = lpa::round12(d.lambdaStar);
      x["lambda_first_best"] = lpa::round12(d.lambdaFirstBest);
      x["s_R"] = lpa::round12(d.sR);
      x["s_I"] = lpa::round12(d.sI);
      x["lp_value"] = lpa::round12(d.lpValue);
      x["gp_net_profit"] = lpa::round12(d.gpNetProfit);
      return x;
    };
    j["dbd_project1"] = dbd_json(d1);
    j["dbd_project2"] = dbd_json(d2);
    if (s.project(0).p == 0.0 && s.project(1).p == 0.0) {
      const lpa::PowerCostPair costs =
          lpa::PowerCostPair::make(pc.a, pc.b, pc.m, s.R(), s.I());
      const lpa::ContinuousWpReport wp = lpa::solve_continuous_wp(costs);
      const lpa::PowerComparison cmp = lpa::compare_power(costs);
      lpa::ordered_json w;
      w["lambda_low_cost"] = lpa::round12(wp.lambdaA);
      w["lambda_high_cost"] = lpa::round12(wp.lambdaB);
      w["s_2R"] = lpa::round12(wp.s2R);
      w["lp_value"] = lpa::round12(wp.lpValue);
      j["wp"] = w;
      j["preferred"] = cmp.margin > 0.0 ? "WP" : "DBD";
      j["margin"] = lpa::round12(cmp.margin);
    } else {
      j["wp"] = nullptr;
      j["note"] = "whole-portfolio closed form applies only when both p are 0";
    }
    emit(j);
    return kExitOk;
  }

  const lpa::SolutionReport rep = dispatch_solve(file, args.method, args.reputable);
  emit(lpa::report_to_json(rep));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limited-partnership payout design laboratory"};
  app.require_subcommand(1);

  SolveArgs solveArgs;
  CLI::App* solve = app.add_subcommand("solve", "Solve one contract and print the report");
  solve->add_option("--scenario", solveArgs.scenarioPath, "Scenario JSON file")->required();
  solve->add_option("--method", solveArgs.method,
                    "dbd|wp|wp-fno|conditional|wp-monotone|three-point|continuous");
  solve->add_flag("--reputable,!--non-reputable", solveArgs.reputable,
                  "Reputable GP (default) or FNO-constrained");

  std::string comparePath;
  bool compareReputable = true;
  CLI::App* compare = app.add_subcommand("compare", "Compare deal-by-deal with whole-portfolio");
  compare->add_option("--scenario", comparePath, "Scenario JSON file")->required();
  compare->add_flag("--reputable,!--non-reputable", compareReputable, "GP reputation");

  std::string thresholdsPath;
  CLI::App* thresholds = app.add_subcommand("thresholds", "Print rho*, rho**, p2*");
  thresholds->add_option("--scenario", thresholdsPath, "Scenario JSON file")->required();

  std::string sweepPath, sweepParam = "rho", sweepOut;
  double sweepFrom = 0.0, sweepTo = 1.0;
  int sweepSteps = 101;
  bool sweepReputable = true;
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep as CSV");
  sweep->add_option("--scenario", sweepPath, "Scenario JSON file")->required();
  sweep->add_option("--param", sweepParam, "rho|p1|p2|lambda1|lambda2");
  sweep->add_option("--from", sweepFrom, "Sweep start")->required();
  sweep->add_option("--to", sweepTo, "Sweep end")->required();
  sweep->add_option("--steps", sweepSteps, "Grid points");
  sweep->add_flag("--reputable,!--non-reputable", sweepReputable, "GP reputation");
  sweep->add_option("--output", sweepOut, "Write CSV here instead of stdout");

  int verifyGrid = 200;
  uint64_t verifySeed = 7;
  CLI::App* verify = app.add_subcommand("verify", "Randomized oracle-equivalence suite");
  verify->add_option("--grid", verifyGrid, "Number of random scenarios");
  verify->add_option("--seed", verifySeed, "Sampler seed");

  std::string simPath, simMethod = "wp", simContractPath, simDumpPath;
  long long simTrials = 100000;
  uint64_t simSeed = 1;
  bool simReputable = true;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo check of a contract");
  simulate->add_option("--scenario", simPath, "Scenario JSON file")->required();
  simulate->add_option("--method", simMethod, "Solver for the contract (as in solve)");
  simulate->add_option("--contract", simContractPath,
                       "Reuse the contract from a solve output JSON file");
  simulate->add_option("--trials", simTrials, "Trial count");
  simulate->add_option("--seed", simSeed, "Simulation seed");
  simulate->add_flag("--reputable,!--non-reputable", simReputable, "GP reputation");
  simulate->add_option("--dump-trials", simDumpPath, "Per-trial CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      return run_solve(solveArgs, lpa::load_scenario_file(solveArgs.scenarioPath));
    }
    if (compare->parsed()) {
      const lpa::ScenarioFile file = lpa::load_scenario_file(comparePath);
      emit(lpa::comparison_to_json(lpa::compare_methods(file.scenario, compareReputable)));
      return kExitOk;
    }
    if (thresholds->parsed()) {
      const lpa::ScenarioFile file = lpa::load_scenario_file(thresholdsPath);
      emit(lpa::thresholds_to_json(lpa::rho_star(file.scenario),
                                   lpa::rho_double_star(file.scenario),
                                   lpa::p2_star(file.scenario)));
      return kExitOk;
    }
    if (sweep->parsed()) {
      const lpa::ScenarioFile file = lpa::load_scenario_file(sweepPath);
      const std::string csv = lpa::sweep_csv(file.scenario, sweepParam, sweepFrom,
                                             sweepTo, sweepSteps, sweepReputable);
      if (sweepOut.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(sweepOut);
        if (!out) throw lpa::InvalidScenario("cannot open output file: " + sweepOut);
        out << csv;
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      const lpa::VerifyResult res = lpa::verify_oracle_equivalence(verifyGrid, verifySeed);
      lpa::ordered_json j;
      j["scenarios"] = res.scenarios;
      j["solver_runs"] = res.solverRuns;
      j["failures"] = res.failures();
      j["max_gap"] = lpa::round12(res.maxGap);
      j["seconds"] = lpa::round12(res.seconds);
      emit(j);
      for (const std::string& msg : res.messages) std::cerr << msg << "\n";
      return res.ok() ? kExitOk : kExitOracle;
    }
    if (simulate->parsed()) {
      const lpa::ScenarioFile file = lpa::load_scenario_file(simPath);
      const lpa::Market market = simMethod == "three-point" && file.threePoint
                                     ? lpa::Market::single_three_point(*file.threePoint)
                                     : lpa::Market::from_scenario(file.scenario);

      lpa::ContractSchedule contract;
      lpa::SimAnalytic analytic;
      if (!simContractPath.empty()) {
        std::ifstream in(simContractPath);
        if (!in)
          throw lpa::InvalidScenario("cannot open contract file: " + simContractPath);
        lpa::ordered_json j;
        in >> j;
        if (!j.contains("contract"))
          throw lpa::InvalidScenario("contract file lacks a \"contract\" object");
        const std::string kindStr = j.at("contract").at("kind").get<std::string>();
        const lpa::SignalKind kind = kindStr == "per_project"
                                         ? lpa::SignalKind::PerProject
                                         : lpa::SignalKind::Aggregate;
        const lpa::SignalSpace space(market, kind);
        contract = lpa::contract_from_json(j.at("contract"), space);
        analytic.gp = j.at("gp_expected").get<double>();
        analytic.lp = j.at("lp_expected").get<double>();
        analytic.total = j.at("total_surplus").get<double>();
      } else {
        const lpa::SolutionReport rep = dispatch_solve(file, simMethod, simReputable);
        contract = rep.contract;
        analytic = {rep.gpExpected, rep.lpExpected, rep.totalSurplus};
      }

      const lpa::SignalSpace space(market, contract.kind);
      const lpa::GPStrategy strategy =
          lpa::principal_favored_best_response(market, space, contract);

      std::ofstream dump;
      std::ostream* dumpPtr = nullptr;
      if (!simDumpPath.empty()) {
        dump.open(simDumpPath);
        if (!dump) throw lpa::InvalidScenario("cannot open dump file: " + simDumpPath);
        dump << "trial,type1,type2,action1,action2,cash,gp,lp\n";
        dumpPtr = &dump;
      }
      const lpa::SimReport rep =
          lpa::simulate(market, contract, strategy, simTrials, simSeed, analytic, dumpPtr);
      emit(lpa::sim_report_to_json(rep));
      return kExitOk;
    }
  } catch (const lpa::InvalidScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lpa::OracleMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOracle;
  } catch (const lpa::Infeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const lpa::InfeasibleParticipation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const lpa::DegenerateAdverseSelection& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const lpa::SingularSlope& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const lpa::NoInteriorOptimum& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const lpa::InvalidCost& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
