#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lpa/simplex.hpp"

using namespace lpa;

TEST_CASE("two-variable LP with known optimum") {
  // min x + 2y  s.t.  x + y >= 1, y >= 0.25  ->  x=0.75, y=0.25, value 1.25
  LpProblem p;
  p.objective = {1.0, 2.0};
  p.rows.push_back({{1.0, 1.0}, RowSense::Ge, 1.0, "sum"});
  p.rows.push_back({{0.0, 1.0}, RowSense::Ge, 0.25, "floor"});
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(sol.x[0] == doctest::Approx(0.75));
  CHECK(sol.x[1] == doctest::Approx(0.25));
  CHECK(sol.maxResidual <= 1e-10);
}

TEST_CASE("mixed senses and equality rows") {
  // min 3x + y  s.t.  x + y = 2, x <= 1.5, y <= 1.2  ->  x=0.8, y=1.2
  LpProblem p;
  p.objective = {3.0, 1.0};
  p.rows.push_back({{1.0, 1.0}, RowSense::Eq, 2.0, "eq"});
  p.rows.push_back({{1.0, 0.0}, RowSense::Le, 1.5, "capx"});
  p.rows.push_back({{0.0, 1.0}, RowSense::Le, 1.2, "capy"});
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(3.0 * 0.8 + 1.2));
  CHECK(sol.x[0] == doctest::Approx(0.8));
  CHECK(sol.x[1] == doctest::Approx(1.2));
}

TEST_CASE("infeasible system is detected") {
  LpProblem p;
  p.objective = {1.0};
  p.rows.push_back({{1.0}, RowSense::Ge, 2.0, "hi"});
  p.rows.push_back({{1.0}, RowSense::Le, 1.0, "lo"});
  CHECK(solve_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded objective is detected") {
  // max x  (as min -x) with only a lower bound.
  LpProblem p;
  p.objective = {-1.0};
  p.rows.push_back({{1.0}, RowSense::Ge, 1.0, "lb"});
  CHECK(solve_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate vertices terminate (Beale-style cycling example)") {
  // Classic cycling instance for naive pivot rules; Bland's rule must finish.
  LpProblem p;
  p.objective = {-0.75, 150.0, -0.02, 6.0};
  p.rows.push_back({{0.25, -60.0, -0.04, 9.0}, RowSense::Le, 0.0, "r1"});
  p.rows.push_back({{0.5, -90.0, -0.02, 3.0}, RowSense::Le, 0.0, "r2"});
  p.rows.push_back({{0.0, 0.0, 1.0, 0.0}, RowSense::Le, 1.0, "r3"});
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("negative rhs rows are normalized correctly") {
  // min x  s.t.  -x <= -3  (i.e. x >= 3)
  LpProblem p;
  p.objective = {1.0};
  p.rows.push_back({{-1.0}, RowSense::Le, -3.0, "ge3"});
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(3.0));
}

TEST_CASE("binding rows are reported") {
  LpProblem p;
  p.objective = {1.0, 1.0};
  p.rows.push_back({{1.0, 0.0}, RowSense::Ge, 1.0, "active"});
  p.rows.push_back({{1.0, 1.0}, RowSense::Ge, 0.5, "slack"});
  const LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(sol.binding.size() == 1);
  CHECK(p.rows[static_cast<size_t>(sol.binding[0])].label == "active");
}
