#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lpa/analysis.hpp"
#include "lpa/closed_form.hpp"
#include "lpa/extensions.hpp"
#include "lpa/montecarlo.hpp"
#include "lpa/scenario.hpp"

namespace lpa {

using ordered_json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so emitted JSON is byte-stable and short.
double round12(double v);

struct PowerCostSpec {
  double a = 0.0;
  double b = 0.0;
  double m = 0.0;
};

/// Parsed scenario file. The base schema is
///   {"R":num,"I":num,"c":num,"projects":[{"lambda":num,"p":num},{...}],"rho":num}
/// with optional "three_point" and "power_cost" sections; unknown keys are
/// rejected.
struct ScenarioFile {
  PortfolioScenario scenario;
  std::optional<ThreePointParams> threePoint;
  std::optional<PowerCostSpec> powerCost;
};

ScenarioFile load_scenario_file(const std::string& path);
ScenarioFile parse_scenario_json(const ordered_json& j);

ordered_json validation_to_json(const ValidationReport& rep);
ordered_json report_to_json(const SolutionReport& rep);
ordered_json comparison_to_json(const ComparisonReport& rep);
ordered_json thresholds_to_json(double rhoStar, const RhoDoubleStar& rr,
                                const P2Star& ps);
ordered_json sim_report_to_json(const SimReport& rep);
ordered_json uninformed_to_json(const UninformedReport& rep);
ordered_json bargaining_to_json(const BargainingReport& rep);

/// Reads the "contract" object of a solve output back into a schedule aligned
/// with `space` (labels must match the scenario's lattice).
ContractSchedule contract_from_json(const ordered_json& j, const SignalSpace& space);

std::string dump_json(const ordered_json& j);

}  // namespace lpa
