#include "lpa/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpa {

namespace {

// Entries below this are elimination noise in the well-scaled contract
// problems solved here; they are never accepted as pivots and are snapped to
// zero after each elimination so they cannot be amplified later.
constexpr double kNoise = 1e-13;
constexpr double kPivotFloor = 1e-9;

// Tableau layout: one row per constraint plus an objective row of reduced
// costs that is pivoted alongside. Columns: structural variables, then one
// slack/surplus per row, then artificials for rows that need them. Phase 1
// minimizes the sum of artificials; phase 2 the caller's objective.
//
// Pivot selection is Dantzig's rule with a largest-pivot tie-break; after a
// long run of degenerate steps it falls back to Bland's least-index rule,
// which cannot cycle, until a nondegenerate pivot is made again.
class Tableau {
 public:
  Tableau(const LpProblem& p, double pivotTol) : tol_(pivotTol) {
    n_ = p.objective.size();
    m_ = p.rows.size();

    std::vector<std::vector<double>> a(m_);
    std::vector<double> b(m_);
    std::vector<RowSense> sense(m_);
    for (size_t r = 0; r < m_; ++r) {
      const LpRow& row = p.rows[r];
      if (row.coeff.size() != n_)
        throw std::invalid_argument("LP row width mismatch");
      a[r] = row.coeff;
      b[r] = row.rhs;
      sense[r] = row.sense;
      // Flip rows so rhs >= 0; Ge rows with zero rhs become slack-only Le
      // rows, which keeps the artificial count (and phase-1 work) down.
      if (b[r] < 0.0 || (b[r] == 0.0 && sense[r] == RowSense::Ge)) {
        for (double& v : a[r]) v = -v;
        b[r] = -b[r];
        if (sense[r] == RowSense::Ge)
          sense[r] = RowSense::Le;
        else if (sense[r] == RowSense::Le)
          sense[r] = RowSense::Ge;
      }
    }

    size_t nArt = 0;
    for (size_t r = 0; r < m_; ++r)
      if (sense[r] != RowSense::Le) ++nArt;
    artStart_ = n_ + m_;
    cols_ = artStart_ + nArt;
    T_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, 0);

    size_t art = artStart_;
    for (size_t r = 0; r < m_; ++r) {
      for (size_t j = 0; j < n_; ++j) T_[r][j] = a[r][j];
      T_[r][cols_] = b[r];
      const size_t slack = n_ + r;
      switch (sense[r]) {
        case RowSense::Le:
          T_[r][slack] = 1.0;
          basis_[r] = slack;
          break;
        case RowSense::Ge:
          T_[r][slack] = -1.0;
          T_[r][art] = 1.0;
          basis_[r] = art++;
          break;
        case RowSense::Eq:
          T_[r][art] = 1.0;
          basis_[r] = art++;
          break;
      }
    }
  }

  LpStatus run(const std::vector<double>& objective, std::vector<double>* x) {
    if (artStart_ < cols_) {
      std::vector<double> phase1(cols_, 0.0);
      for (size_t j = artStart_; j < cols_; ++j) phase1[j] = 1.0;
      LpStatus st = optimize(phase1, cols_);
      if (st == LpStatus::Unbounded) return LpStatus::Infeasible;
      double infeas = 0.0;
      for (size_t r = 0; r < m_; ++r)
        if (basis_[r] >= artStart_) infeas += T_[r][cols_];
      if (infeas > 1e-8) return LpStatus::Infeasible;
      pivot_out_artificials();
    }

    std::vector<double> obj(cols_, 0.0);
    for (size_t j = 0; j < n_; ++j) obj[j] = objective[j];
    LpStatus st = optimize(obj, artStart_);
    if (st != LpStatus::Optimal) return st;

    x->assign(n_, 0.0);
    for (size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) (*x)[basis_[r]] = T_[r][cols_];
    return LpStatus::Optimal;
  }

 private:
  // Minimize obj using columns [0, colLimit); columns past the limit are
  // frozen so artificials never re-enter after phase 1.
  LpStatus optimize(const std::vector<double>& obj, size_t colLimit) {
    std::vector<double> red(cols_, 0.0);
    // Incremental reduced-cost updates drift over long degenerate runs, so
    // they are recomputed exactly on a schedule and before any final verdict.
    auto recompute = [&] {
      std::vector<double> cb(m_);
      for (size_t r = 0; r < m_; ++r) cb[r] = obj[basis_[r]];
      for (size_t j = 0; j < cols_; ++j) {
        double z = 0.0;
        for (size_t r = 0; r < m_; ++r)
          if (cb[r] != 0.0) z += cb[r] * T_[r][j];
        red[j] = obj[j] - z;
      }
    };
    recompute();
    bool fresh = true;
    // Columns whose only positive entries are noise cannot be pivoted on;
    // they are blocked until the geometry changes with the next real pivot.
    std::vector<char> blocked(cols_, 0);

    const size_t maxIter = 2000 + 200 * (m_ + cols_);
    size_t pivots = 0;
    size_t degenerateStreak = 0;
    for (size_t iter = 0; iter < maxIter; ++iter) {
      const bool bland = degenerateStreak > 100;
      size_t enter = colLimit;
      double mostNegative = -tol_;
      for (size_t j = 0; j < colLimit; ++j) {
        if (!blocked[j] && red[j] < mostNegative) {
          enter = j;
          if (bland) break;  // least index
          mostNegative = red[j];
        }
      }
      if (enter == colLimit) {
        if (fresh) return LpStatus::Optimal;
        recompute();
        fresh = true;
        continue;  // re-check the verdict against exact reduced costs
      }

      const size_t leave = pick_leaving(enter);
      if (leave == m_) {
        if (!fresh) {
          recompute();
          fresh = true;
          continue;
        }
        // No usable pivot. A genuinely improving column with only noise-level
        // positive entries would mean an (almost) unbounded ray; with exact
        // reduced costs that is the unbounded verdict. A marginal column is
        // numerical residue: drop it from consideration.
        double maxEntry = 0.0;
        for (size_t r = 0; r < m_; ++r) maxEntry = std::max(maxEntry, T_[r][enter]);
        if (maxEntry <= tol_) return LpStatus::Unbounded;
        if (red[enter] < -1e-6)
          throw std::runtime_error("simplex stuck on a noise-level pivot column");
        blocked[enter] = 1;
        continue;
      }

      const double step = std::max(T_[leave][cols_], 0.0) / T_[leave][enter];
      degenerateStreak = step > 1e-12 ? 0 : degenerateStreak + 1;

      pivot(leave, enter);
      std::fill(blocked.begin(), blocked.end(), 0);
      if (++pivots % 64 == 0) {
        recompute();
        fresh = true;
      } else {
        const double f = red[enter];
        for (size_t j = 0; j < cols_; ++j) red[j] -= f * T_[leave][j];
        red[enter] = 0.0;
        fresh = false;
      }
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

  // Minimum-ratio row for the entering column; only entries above the pivot
  // floor are eligible. Near-ties (a tight window, so no basic value is
  // driven materially negative) prefer the numerically largest pivot, then
  // the smallest basic index for the Bland fallback's determinism.
  size_t pick_leaving(size_t enter) const {
    size_t leave = m_;
    double bestRatio = 0.0;
    for (size_t r = 0; r < m_; ++r) {
      const double piv = T_[r][enter];
      if (piv <= kPivotFloor) continue;
      const double ratio = std::max(T_[r][cols_], 0.0) / piv;
      if (leave == m_) {
        leave = r;
        bestRatio = ratio;
        continue;
      }
      const double window = 1e-11 * (1.0 + bestRatio);
      if (ratio < bestRatio - window) {
        bestRatio = ratio;
        leave = r;
      } else if (ratio < bestRatio + window) {
        const double incumbent = T_[leave][enter];
        if (piv > incumbent * (1.0 + 1e-12) ||
            (piv >= incumbent * (1.0 - 1e-12) && basis_[r] < basis_[leave])) {
          bestRatio = std::min(bestRatio, ratio);
          leave = r;
        }
      }
    }
    return leave;
  }

  void pivot(size_t prow, size_t pcol) {
    const double piv = T_[prow][pcol];
    for (size_t j = 0; j <= cols_; ++j) T_[prow][j] /= piv;
    T_[prow][pcol] = 1.0;
    for (size_t r = 0; r < m_; ++r) {
      if (r == prow) continue;
      const double f = T_[r][pcol];
      if (f == 0.0) continue;
      for (size_t j = 0; j <= cols_; ++j) {
        double v = T_[r][j] - f * T_[prow][j];
        if (std::abs(v) < kNoise) v = 0.0;
        T_[r][j] = v;
      }
      T_[r][pcol] = 0.0;
      // Basic values must stay nonnegative; sub-noise negatives are rounding.
      if (T_[r][cols_] < 0.0 && T_[r][cols_] > -1e-10) T_[r][cols_] = 0.0;
    }
    basis_[prow] = pcol;
  }

  // After phase 1, swap basic artificials (at value 0) for any non-artificial
  // column with a usable pivot. A row with none is redundant: its entries in
  // real columns are all noise, which later pivots cannot amplify.
  void pivot_out_artificials() {
    for (size_t r = 0; r < m_; ++r) {
      if (basis_[r] < artStart_) continue;
      size_t best = artStart_;
      double bestAbs = kPivotFloor;
      for (size_t cand = 0; cand < artStart_; ++cand) {
        if (std::abs(T_[r][cand]) > bestAbs) {
          bestAbs = std::abs(T_[r][cand]);
          best = cand;
        }
      }
      if (best < artStart_) {
        pivot(r, best);
      } else {
        // Redundant row: wipe residual noise so it stays inert.
        for (size_t j = 0; j < artStart_; ++j) T_[r][j] = 0.0;
      }
    }
  }

  double tol_;
  size_t n_ = 0, m_ = 0, cols_ = 0, artStart_ = 0;
  std::vector<std::vector<double>> T_;
  std::vector<size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, double pivotTol,
                    double bindingTol) {
  LpSolution sol;
  Tableau tab(problem, pivotTol);
  std::vector<double> x;
  sol.status = tab.run(problem.objective, &x);
  if (sol.status != LpStatus::Optimal) return sol;

  sol.x = std::move(x);
  // Objective recomputed from the solution itself, not from tableau state.
  double value = 0.0;
  for (size_t j = 0; j < problem.objective.size(); ++j)
    value += problem.objective[j] * sol.x[j];
  sol.value = value;

  double maxResid = 0.0;
  for (double xi : sol.x) maxResid = std::max(maxResid, -xi);
  for (size_t r = 0; r < problem.rows.size(); ++r) {
    const LpRow& row = problem.rows[r];
    double act = 0.0;
    for (size_t j = 0; j < row.coeff.size(); ++j) act += row.coeff[j] * sol.x[j];
    const double gap = act - row.rhs;
    switch (row.sense) {
      case RowSense::Ge:
        maxResid = std::max(maxResid, -gap);
        break;
      case RowSense::Le:
        maxResid = std::max(maxResid, gap);
        break;
      case RowSense::Eq:
        maxResid = std::max(maxResid, std::abs(gap));
        break;
    }
    if (std::abs(gap) <= bindingTol) sol.binding.push_back(static_cast<int>(r));
  }
  sol.maxResidual = maxResid;
  return sol;
}

}  // namespace lpa
