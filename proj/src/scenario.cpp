#include "lpa/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lpa {

namespace {

constexpr double kJointTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::failure_summary() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.pass) continue;
    if (!out.empty()) out += "; ";
    out += c.name + ": " + c.detail;
  }
  return out;
}

PortfolioScenario::PortfolioScenario(double R, double I, double c,
                                     ProjectParams first, ProjectParams second,
                                     double rho)
    : R_(R), I_(I), c_(c), rho_(rho) {
  // Store p-descending so every formula's "project 1" is the one with the
  // harder adverse-selection problem. Stable for equal p.
  if (second.p > first.p) {
    projects_ = {second, first};
    original_index_ = {1, 0};
  } else {
    projects_ = {first, second};
    original_index_ = {0, 1};
  }
}

double PortfolioScenario::lambda_min() const {
  return std::min(projects_[0].lambda, projects_[1].lambda);
}

double PortfolioScenario::lambda_max() const {
  return std::max(projects_[0].lambda, projects_[1].lambda);
}

double PortfolioScenario::rho_min_valid() const {
  const double lmin = lambda_min();
  if (lmin <= 0.0) return 0.0;
  return std::max(0.0, (lambda1() + lambda2() - 1.0) / lmin);
}

PortfolioScenario PortfolioScenario::with_rho(double rho) const {
  PortfolioScenario s = *this;
  s.rho_ = rho;
  return s;
}

PortfolioScenario PortfolioScenario::with_project(int i, ProjectParams p) const {
  std::array<ProjectParams, 2> proj = projects_;
  proj[static_cast<size_t>(i)] = p;
  // Rebuild in original order so original_index stays meaningful.
  std::array<ProjectParams, 2> in_original{};
  in_original[static_cast<size_t>(original_index_[0])] = proj[0];
  in_original[static_cast<size_t>(original_index_[1])] = proj[1];
  return PortfolioScenario(R_, I_, c_, in_original[0], in_original[1], rho_);
}

ValidationReport PortfolioScenario::validate() const {
  ValidationReport rep;
  auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
  };

  add("positivity", R_ > I_ && I_ > 0.0 && c_ > 0.0,
      "requires R > I > 0 and c > 0 (R=" + fmt(R_) + ", I=" + fmt(I_) +
          ", c=" + fmt(c_) + ")");
  add("rho_range", rho_ >= 0.0 && rho_ <= 1.0, "rho=" + fmt(rho_));

  // Aggregate outcomes {0,I,R,2I,R+I,2R} must stay pairwise distinct.
  const double scale = std::max(1.0, std::abs(R_));
  const bool lattice_ok = std::abs(R_ - I_) > 1e-9 * scale &&
                          std::abs(R_ - 2.0 * I_) > 1e-9 * scale;
  add("lattice", lattice_ok, "R must differ from I and 2I (R=" + fmt(R_) +
                                 ", I=" + fmt(I_) + ")");

  for (int i = 0; i < 2; ++i) {
    const ProjectParams& pr = projects_[static_cast<size_t>(i)];
    const std::string tag = "[" + std::to_string(i + 1) + "]";
    add("lambda_range" + tag, pr.lambda > 0.0 && pr.lambda <= 1.0,
        "lambda=" + fmt(pr.lambda));
    add("p_range" + tag, pr.p >= 0.0 && pr.p < 1.0, "p=" + fmt(pr.p));
    add("assumption1" + tag, pr.p * R_ < I_,
        "pR=" + fmt(pr.p * R_) + " must be < I=" + fmt(I_));
    const bool a2 = pr.lambda > 0.0 && R_ - c_ / pr.lambda > I_;
    add("assumption2" + tag, a2,
        "R - c/lambda=" + fmt(pr.lambda > 0.0 ? R_ - c_ / pr.lambda : -1.0) +
            " must be > I=" + fmt(I_));
  }

  const double lmin = lambda_min();
  const double pGG = rho_ * lmin;
  const double pGB = lambda1() - pGG;
  const double pBG = lambda2() - pGG;
  const double pBB = 1.0 - lambda1() - lambda2() + pGG;
  add("joint_nonneg",
      pGB >= -kJointTol && pBG >= -kJointTol && pBB >= -kJointTol,
      "(pGB,pBG,pBB)=(" + fmt(pGB) + "," + fmt(pBG) + "," + fmt(pBB) + ")");

  return rep;
}

void PortfolioScenario::require_valid() const {
  ValidationReport rep = validate();
  if (!rep.all_pass()) throw InvalidScenario("invalid scenario: " + rep.failure_summary());
}

JointTypeDistribution PortfolioScenario::joint_type_distribution(EffortSet effort) const {
  require_valid();
  JointTypeDistribution d;
  const unsigned mask = effort_mask(effort);
  const bool e1 = (mask & 1u) != 0u;
  const bool e2 = (mask & 2u) != 0u;
  if (e1 && e2) {
    const double pGG = rho_ * lambda_min();
    d.pGG = pGG;
    d.pGB = lambda1() - pGG;
    d.pBG = lambda2() - pGG;
    d.pBB = std::max(0.0, 1.0 - lambda1() - lambda2() + pGG);
  } else if (e1) {
    d.pGB = lambda1();
    d.pBB = 1.0 - lambda1();
  } else if (e2) {
    d.pBG = lambda2();
    d.pBB = 1.0 - lambda2();
  } else {
    d.pBB = 1.0;
  }
  return d;
}

std::array<double, 6> PortfolioScenario::aggregate_outcomes() const {
  std::array<double, 6> out = {0.0, I_, R_, 2.0 * I_, R_ + I_, 2.0 * R_};
  std::sort(out.begin(), out.end());
  return out;
}

DerivedCoefficients DerivedCoefficients::from(const PortfolioScenario& s) {
  DerivedCoefficients d;
  d.lambdaMin = s.lambda_min();
  d.lambdaMax = s.lambda_max();
  d.alpha = s.rho() * d.lambdaMin;
  d.beta = s.lambda1() + s.lambda2() - 2.0 * d.alpha;
  d.gamma = 1.0 - s.lambda1() - s.lambda2() + d.alpha;
  d.betaTilde = d.beta + s.p1() * d.gamma;
  d.theta1 = s.lambda1() + s.p1() * (1.0 - s.lambda1());
  d.theta2 = s.lambda2() + s.p1() * (1.0 - s.lambda2());
  return d;
}

ValidationReport validate_scenario(const PortfolioScenario& s) { return s.validate(); }

}  // namespace lpa
