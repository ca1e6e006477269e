#include "lpa/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "lpa/errors.hpp"

namespace lpa {

namespace {

void require_keys(const ordered_json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
  if (!j.is_object()) throw InvalidScenario(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key))
      throw InvalidScenario("unknown field \"" + key + "\" in " + where);
  }
  for (const std::string& key : required)
    if (!j.contains(key))
      throw InvalidScenario("missing field \"" + key + "\" in " + where);
}

double num(const ordered_json& j, const std::string& key, const std::string& where) {
  const ordered_json& v = j.at(key);
  if (!v.is_number())
    throw InvalidScenario("field \"" + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

ScenarioFile parse_scenario_json(const ordered_json& j) {
  require_keys(j, {"R", "I", "c", "projects", "rho"}, {"three_point", "power_cost"},
               "scenario");
  const ordered_json& projects = j.at("projects");
  if (!projects.is_array() || projects.size() != 2)
    throw InvalidScenario("\"projects\" must be an array of exactly two objects");
  ProjectParams pp[2];
  for (size_t i = 0; i < 2; ++i) {
    require_keys(projects[i], {"lambda", "p"}, {}, "projects[" + std::to_string(i) + "]");
    pp[i].lambda = num(projects[i], "lambda", "projects");
    pp[i].p = num(projects[i], "p", "projects");
  }

  ScenarioFile out{
      PortfolioScenario(num(j, "R", "scenario"), num(j, "I", "scenario"),
                        num(j, "c", "scenario"), pp[0], pp[1],
                        num(j, "rho", "scenario")),
      std::nullopt, std::nullopt};

  if (j.contains("three_point")) {
    const ordered_json& t = j.at("three_point");
    require_keys(t, {"R1", "R2", "p", "p1", "p2", "lambda"}, {}, "three_point");
    ThreePointParams tp;
    tp.R1 = num(t, "R1", "three_point");
    tp.R2 = num(t, "R2", "three_point");
    tp.I = out.scenario.I();
    tp.c = out.scenario.c();
    tp.lambda = num(t, "lambda", "three_point");
    tp.pGoodR1 = num(t, "p", "three_point");
    tp.pBadR1 = num(t, "p1", "three_point");
    tp.pBadR2 = num(t, "p2", "three_point");
    out.threePoint = tp;
  }
  if (j.contains("power_cost")) {
    const ordered_json& t = j.at("power_cost");
    require_keys(t, {"a", "b", "m"}, {}, "power_cost");
    out.powerCost = PowerCostSpec{num(t, "a", "power_cost"), num(t, "b", "power_cost"),
                                  num(t, "m", "power_cost")};
  }
  return out;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScenario("cannot open scenario file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidScenario("scenario file is not valid JSON: " + std::string(e.what()));
  }
  return parse_scenario_json(j);
}

ordered_json validation_to_json(const ValidationReport& rep) {
  ordered_json j;
  j["valid"] = rep.all_pass();
  ordered_json checks = ordered_json::array();
  for (const ValidationCheck& c : rep.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    if (!c.pass) jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  return j;
}

ordered_json report_to_json(const SolutionReport& rep) {
  ordered_json contract;
  contract["kind"] =
      rep.contract.kind == SignalKind::Aggregate ? "aggregate" : "per_project";
  contract["fno"] = rep.contract.fno;
  contract["monotone_everywhere"] = rep.contract.monotoneEverywhere;
  ordered_json payouts;
  for (const auto& [label, value] : rep.contractEntries)
    payouts[label] = round12(value);
  contract["payouts"] = payouts;

  ordered_json j;
  j["contract"] = contract;
  j["gp_expected"] = round12(rep.gpExpected);
  j["lp_expected"] = round12(rep.lpExpected);
  j["total_surplus"] = round12(rep.totalSurplus);
  j["regime"] = rep.regime;
  j["binding"] = rep.bindingConstraints;
  j["oracle_gap"] = round12(rep.oracleGap);
  return j;
}

ordered_json comparison_to_json(const ComparisonReport& rep) {
  ordered_json j;
  j["reputable"] = rep.reputable;
  j["dbd_lp_value"] = round12(rep.dbdLpValue);
  j["wp_lp_value"] = round12(rep.wpLpValue);
  j["preferred"] = rep.preferred;
  if (rep.rhoStar)
    j["rho_star"] = round12(*rep.rhoStar);
  else
    j["rho_star"] = nullptr;
  if (rep.rhoDoubleStar) {
    j["rho_double_star"] = rep.rhoDoubleStar->kind == RhoDoubleStar::Kind::Root
                               ? ordered_json(round12(rep.rhoDoubleStar->value))
                               : ordered_json(nullptr);
    j["rho_double_star_side"] = rep.rhoDoubleStar->kind_name();
  } else {
    j["rho_double_star"] = nullptr;
    j["rho_double_star_side"] = "undefined";
  }
  if (rep.p2Star) {
    j["p2_star"] = round12(rep.p2Star->value);
    j["p2_star_side"] = rep.p2Star->kind_name();
  } else {
    j["p2_star"] = nullptr;
    j["p2_star_side"] = "undefined";
  }
  return j;
}

ordered_json thresholds_to_json(double rhoStar, const RhoDoubleStar& rr,
                                const P2Star& ps) {
  ordered_json j;
  j["rho_star"] = round12(rhoStar);
  j["rho_double_star"] = rr.kind == RhoDoubleStar::Kind::Root
                             ? ordered_json(round12(rr.value))
                             : ordered_json(nullptr);
  j["rho_double_star_side"] = rr.kind_name();
  j["p2_star"] = round12(ps.value);
  j["p2_star_side"] = ps.kind_name();
  return j;
}

ordered_json sim_report_to_json(const SimReport& rep) {
  ordered_json j;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["strategy"] = rep.strategyName;
  j["emp_gp_mean"] = round12(rep.empGpMean);
  j["emp_lp_mean"] = round12(rep.empLpMean);
  j["emp_total_mean"] = round12(rep.empTotalMean);
  j["se_gp"] = round12(rep.seGp);
  j["se_lp"] = round12(rep.seLp);
  j["se_total"] = round12(rep.seTotal);
  if (rep.hasAnalytic) {
    j["gap_gp"] = round12(rep.gapGp);
    j["gap_lp"] = round12(rep.gapLp);
    j["gap_total"] = round12(rep.gapTotal);
  }
  return j;
}

ordered_json uninformed_to_json(const UninformedReport& rep) {
  ordered_json j;
  j["offered_method"] = rep.offeredMethod;
  j["offered_rho"] = round12(rep.offeredRho);
  j["chosen_rho"] = round12(rep.chosenRho);
  j["gp_rho_derivative"] = round12(rep.gpRhoDerivative);
  j["contract_report"] = report_to_json(rep.contract);
  return j;
}

ordered_json bargaining_to_json(const BargainingReport& rep) {
  ordered_json j;
  j["method"] = rep.method;
  j["gp_gross"] = round12(rep.gpGross);
  j["gp_net_value"] = round12(rep.gpNetValue);
  j["lp_value"] = round12(rep.lpValue);
  j["chosen_rho"] = round12(rep.chosenRho);
  j["unique_contract"] = rep.uniqueContract;
  j["wp_surplus_dominates_dbd"] = rep.wpSurplusDominatesDbd;
  ordered_json payouts;
  for (const auto& [label, value] : rep.contractEntries)
    payouts[label] = round12(value);
  j["payouts"] = payouts;
  return j;
}

ContractSchedule contract_from_json(const ordered_json& j, const SignalSpace& space) {
  require_keys(j, {"kind", "payouts"}, {"fno", "monotone_everywhere"}, "contract");
  ContractSchedule k;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "aggregate")
    k.kind = SignalKind::Aggregate;
  else if (kind == "per_project")
    k.kind = SignalKind::PerProject;
  else
    throw InvalidScenario("contract kind must be \"aggregate\" or \"per_project\"");
  if (k.kind != space.kind())
    throw SignalMismatch("contract kind does not match the requested signal space");
  k.fno = j.value("fno", false);
  k.monotoneEverywhere = j.value("monotone_everywhere", false);
  k.payouts.assign(static_cast<size_t>(space.size()), 0.0);
  for (const auto& [label, value] : j.at("payouts").items()) {
    if (!value.is_number())
      throw InvalidScenario("contract payout \"" + label + "\" must be a number");
    k.payouts[static_cast<size_t>(space.index_of_label(label))] = value.get<double>();
  }
  return k;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace lpa
