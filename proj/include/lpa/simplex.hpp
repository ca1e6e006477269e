#pragma once

#include <string>
#include <vector>

namespace lpa {

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class RowSense : char { Ge = '>', Le = '<', Eq = '=' };

struct LpRow {
  std::vector<double> coeff;
  RowSense sense = RowSense::Ge;
  double rhs = 0.0;
  std::string label;
};

/// min objective . x  subject to rows, x >= 0.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpRow> rows;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  /// Indices of rows whose activity equals the rhs (within bindingTol).
  std::vector<int> binding;
  /// max(0, violation) over all rows and variable bounds at the solution.
  double maxResidual = 0.0;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule. Intended
/// for the small contract problems here (tens of rows, <= 10 variables).
LpSolution solve_lp(const LpProblem& problem, double pivotTol = 1e-11,
                    double bindingTol = 1e-9);

}  // namespace lpa
