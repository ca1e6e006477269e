#include "lpa/market.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lpa/errors.hpp"

namespace lpa {

namespace {

constexpr double kCashTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kCashTol * std::max(1.0, std::abs(a) + std::abs(b)); }

std::string sum_label(const std::string& a, const std::string& b) {
  if (a == "0") return b;
  if (b == "0") return a;
  if (a == b) return "2" + a;
  // Deterministic order: higher-cash part printed first is handled by caller;
  // join lexicographically descending to get "R+I" rather than "I+R".
  return a > b ? a + "+" + b : b + "+" + a;
}

}  // namespace

void ThreePointParams::require_valid() const {
  std::ostringstream err;
  if (!(R1 > 0.0 && R2 > 0.0 && I > 0.0 && c > 0.0)) err << "R1,R2,I,c must be positive; ";
  if (!(lambda > 0.0 && lambda <= 1.0)) err << "lambda out of (0,1]; ";
  if (!(pGoodR1 >= 0.0 && pGoodR1 <= 1.0)) err << "good-type probability out of range; ";
  if (!(pBadR1 >= 0.0 && pBadR2 >= 0.0 && pBadR1 + pBadR2 <= 1.0))
    err << "bad-type probabilities out of range; ";
  if (!(bad_mean() < I)) err << "bad-type mean return must be < I; ";
  if (!(good_mean() - c / std::max(lambda, 1e-300) > I))
    err << "good-type mean net of effort must exceed I; ";
  if (close(R1, R2) || close(R1, I) || close(R2, I) || close(R1, 0.0) || close(R2, 0.0))
    err << "support values 0, I, R1, R2 must be distinct; ";
  const std::string msg = err.str();
  if (!msg.empty()) throw InvalidScenario("invalid three-point parameters: " + msg);
}

Market Market::from_scenario(const PortfolioScenario& s) {
  s.require_valid();
  Market m;
  m.I_ = s.I();
  m.c_ = s.c();
  m.rho_ = s.rho();
  for (int i = 0; i < 2; ++i) {
    const ProjectParams& pr = s.project(i);
    m.lambdas_.push_back(pr.lambda);
    TypeOutcomes t;
    t.good = {{s.R(), 1.0, "R"}};
    t.bad = {{s.R(), pr.p, "R"}, {0.0, 1.0 - pr.p, "0"}};
    m.projects_.push_back(std::move(t));
  }
  return m;
}

Market Market::single_binary(double R, double I, double c, ProjectParams p) {
  Market m;
  m.I_ = I;
  m.c_ = c;
  m.rho_ = 0.0;
  m.lambdas_.push_back(p.lambda);
  TypeOutcomes t;
  t.good = {{R, 1.0, "R"}};
  t.bad = {{R, p.p, "R"}, {0.0, 1.0 - p.p, "0"}};
  m.projects_.push_back(std::move(t));
  return m;
}

Market Market::single_three_point(const ThreePointParams& tp) {
  tp.require_valid();
  Market m;
  m.I_ = tp.I;
  m.c_ = tp.c;
  m.rho_ = 0.0;
  m.lambdas_.push_back(tp.lambda);
  TypeOutcomes t;
  t.good = {{tp.R1, tp.pGoodR1, "R1"}, {tp.R2, 1.0 - tp.pGoodR1, "R2"}};
  t.bad = {{tp.R1, tp.pBadR1, "R1"},
           {tp.R2, tp.pBadR2, "R2"},
           {0.0, 1.0 - tp.pBadR1 - tp.pBadR2, "0"}};
  m.projects_.push_back(std::move(t));
  return m;
}

Market Market::two_project_three_point(double R1, double R2, double I, double c,
                                       double lambda1, double pGood1, double pBad1,
                                       double lambda2, double pGood2, double pBad2,
                                       double rho) {
  Market m;
  m.I_ = I;
  m.c_ = c;
  m.rho_ = rho;
  m.lambdas_ = {lambda1, lambda2};
  TypeOutcomes a;
  a.good = {{R1, pGood1, "R1"}, {R2, 1.0 - pGood1, "R2"}};
  a.bad = {{R1, pBad1, "R1"}, {0.0, 1.0 - pBad1, "0"}};
  TypeOutcomes b;
  b.good = {{R1, pGood2, "R1"}, {R2, 1.0 - pGood2, "R2"}};
  b.bad = {{R2, pBad2, "R2"}, {0.0, 1.0 - pBad2, "0"}};
  m.projects_ = {a, b};
  return m;
}

std::vector<double> Market::profile_probs(unsigned effortMask) const {
  const int n = project_count();
  std::vector<double> probs(static_cast<size_t>(1) << n, 0.0);
  if (n == 1) {
    const double lam = (effortMask & 1u) ? lambdas_[0] : 0.0;
    probs[0] = 1.0 - lam;
    probs[1] = lam;
    return probs;
  }
  const bool e1 = (effortMask & 1u) != 0u;
  const bool e2 = (effortMask & 2u) != 0u;
  const double l1 = e1 ? lambdas_[0] : 0.0;
  const double l2 = e2 ? lambdas_[1] : 0.0;
  if (e1 && e2) {
    const double pGG = rho_ * std::min(l1, l2);
    probs[3] = pGG;
    probs[1] = l1 - pGG;
    probs[2] = l2 - pGG;
    probs[0] = std::max(0.0, 1.0 - l1 - l2 + pGG);
  } else {
    probs[1] = l1;
    probs[2] = l2;
    probs[0] = 1.0 - l1 - l2;
  }
  return probs;
}

SignalSpace::SignalSpace(const Market& m, SignalKind kind) : kind_(kind) {
  const int n = m.project_count();

  // Per-project cash support: safe asset plus every invested outcome.
  std::vector<std::vector<OutcomePoint>> support(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<OutcomePoint>& sup = support[static_cast<size_t>(i)];
    sup.push_back({m.I(), 1.0, "I"});
    auto add = [&sup](const OutcomePoint& pt) {
      for (const OutcomePoint& q : sup)
        if (close(q.cash, pt.cash)) return;
      sup.push_back(pt);
    };
    for (const OutcomePoint& pt : m.outcomes(i).good) add(pt);
    for (const OutcomePoint& pt : m.outcomes(i).bad) add(pt);
    bool hasZero = false;
    for (const OutcomePoint& q : sup) hasZero = hasZero || close(q.cash, 0.0);
    if (!hasZero) sup.push_back({0.0, 1.0, "0"});
  }

  if (n == 1) {
    for (const OutcomePoint& pt : support[0])
      signals_.push_back({{pt.cash, 0.0}, pt.cash, pt.label});
  } else if (kind == SignalKind::PerProject) {
    for (const OutcomePoint& a : support[0])
      for (const OutcomePoint& b : support[1])
        signals_.push_back({{a.cash, b.cash}, a.cash + b.cash, a.label + "," + b.label});
  } else {
    for (const OutcomePoint& a : support[0]) {
      for (const OutcomePoint& b : support[1]) {
        const double total = a.cash + b.cash;
        bool found = false;
        for (Signal& sig : signals_) {
          if (close(sig.total, total)) {
            found = true;
            break;
          }
        }
        if (!found)
          signals_.push_back({{a.cash, b.cash}, total, sum_label(a.label, b.label)});
      }
    }
  }

  std::sort(signals_.begin(), signals_.end(), [](const Signal& a, const Signal& b) {
    if (a.total != b.total) return a.total < b.total;
    if (a.parts[0] != b.parts[0]) return a.parts[0] < b.parts[0];
    return a.parts[1] < b.parts[1];
  });

  // Reject near-collisions that would merge signals the contract treats as
  // distinct (scenario validation forbids exact ones already).
  if (kind == SignalKind::Aggregate || n == 1) {
    for (size_t i = 1; i < signals_.size(); ++i) {
      if (signals_[i].total - signals_[i - 1].total < 1e-9)
        throw InvalidScenario("aggregate outcome collision between " +
                              signals_[i - 1].label + " and " + signals_[i].label);
    }
  }
}

int SignalSpace::index_for(const std::array<double, 2>& parts, int nProjects) const {
  if (kind_ == SignalKind::PerProject && nProjects == 2) {
    for (size_t i = 0; i < signals_.size(); ++i)
      if (close(signals_[i].parts[0], parts[0]) && close(signals_[i].parts[1], parts[1]))
        return static_cast<int>(i);
  } else {
    const double total = nProjects == 2 ? parts[0] + parts[1] : parts[0];
    for (size_t i = 0; i < signals_.size(); ++i)
      if (close(signals_[i].total, total)) return static_cast<int>(i);
  }
  throw SignalMismatch("no signal for outcome (" + std::to_string(parts[0]) + "," +
                       std::to_string(parts[1]) + ")");
}

int SignalSpace::index_of_total(double cash) const {
  for (size_t i = 0; i < signals_.size(); ++i)
    if (close(signals_[i].total, cash)) return static_cast<int>(i);
  throw SignalMismatch("no signal with total cash " + std::to_string(cash));
}

int SignalSpace::index_of_label(const std::string& label) const {
  for (size_t i = 0; i < signals_.size(); ++i)
    if (signals_[i].label == label) return static_cast<int>(i);
  throw SignalMismatch("no signal labelled " + label);
}

int GPStrategy::effort_count() const {
  unsigned m = effort;
  int k = 0;
  while (m != 0u) {
    k += static_cast<int>(m & 1u);
    m >>= 1u;
  }
  return k;
}

unsigned GPStrategy::action_for_profile(unsigned profile, int nProjects) const {
  const std::vector<unsigned> profiles = reachable_profiles(effort, nProjects);
  for (size_t i = 0; i < profiles.size(); ++i)
    if (profiles[i] == profile) return actions[i];
  throw std::out_of_range("profile not reachable under this strategy's effort");
}

std::string GPStrategy::name(int nProjects) const {
  std::ostringstream os;
  os << "e={";
  bool first = true;
  for (int i = 0; i < nProjects; ++i) {
    if (effort & (1u << i)) {
      if (!first) os << ",";
      os << (i + 1);
      first = false;
    }
  }
  os << "}";
  const std::vector<unsigned> profiles = reachable_profiles(effort, nProjects);
  for (size_t k = 0; k < profiles.size(); ++k) {
    os << " ";
    for (int i = 0; i < nProjects; ++i) os << ((profiles[k] & (1u << i)) ? 'G' : 'B');
    os << ":";
    for (int i = 0; i < nProjects; ++i) os << ((actions[k] & (1u << i)) ? 'I' : 'S');
  }
  return os.str();
}

std::vector<unsigned> reachable_profiles(unsigned effortMask, int nProjects) {
  std::vector<unsigned> out;
  const unsigned all = (1u << nProjects) - 1u;
  for (unsigned g = 0; g <= all; ++g)
    if ((g & ~effortMask) == 0u) out.push_back(g);
  return out;
}

std::vector<GPStrategy> enumerate_strategies(const Market& m) {
  const int n = m.project_count();
  const unsigned allEffort = (1u << n) - 1u;
  const unsigned nActions = 1u << n;
  std::vector<GPStrategy> out;

  for (unsigned effort = 0; effort <= allEffort; ++effort) {
    const std::vector<unsigned> profiles = reachable_profiles(effort, n);
    const size_t k = profiles.size();
    size_t total = 1;
    for (size_t i = 0; i < k; ++i) total *= nActions;
    for (size_t code = 0; code < total; ++code) {
      GPStrategy g;
      g.effort = effort;
      size_t rem = code;
      g.actions.resize(k);
      for (size_t i = 0; i < k; ++i) {
        g.actions[i] = static_cast<unsigned>(rem % nActions);
        rem /= nActions;
      }
      if (n == 1 && effort == 1u) {
        // Profiles are [B, G]; paying c and then sending a good draw to the
        // safe asset is beaten by mixing the matching no-effort strategies.
        if ((g.actions[1] & 1u) == 0u) continue;
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

GPStrategy first_best_strategy(int nProjects) {
  GPStrategy g;
  g.effort = (1u << nProjects) - 1u;
  const std::vector<unsigned> profiles = reachable_profiles(g.effort, nProjects);
  for (unsigned prof : profiles) g.actions.push_back(prof);
  return g;
}

GPStrategy fno_two_project_target() {
  GPStrategy g = first_best_strategy(2);
  g.actions[0] = 1u;  // both bad: invest project 1 (the higher-p project)
  return g;
}

GPStrategy invest_always_single() {
  GPStrategy g;
  g.effort = 1u;
  g.actions = {1u, 1u};
  return g;
}

}  // namespace lpa
