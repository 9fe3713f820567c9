#include <doctest.h>

#include <cmath>
#include <random>

#include "dwfilter/lp.hpp"
#include "oracles.hpp"

using namespace dwf;

namespace {

std::vector<Entry> col(std::initializer_list<Entry> e) { return e; }

// Primal feasibility, dual signs, dual feasibility, strong duality and
// complementary slackness of an optimal solution.
void check_optimality(const LpModel& m, const LpSolution& s) {
  REQUIRE(s.status == LpStatus::Optimal);
  std::vector<double> activity(m.num_rows(), 0.0);
  double primal_obj = 0.0;
  for (int j = 0; j < m.num_columns(); ++j) {
    CHECK(s.primal[j] >= -1e-9);
    primal_obj += m.cost(j) * s.primal[j];
    for (const Entry& e : m.column(j)) activity[e.row] += e.value * s.primal[j];
  }
  CHECK(std::abs(primal_obj - s.objective) <= 1e-7 * (1 + std::abs(s.objective)));
  double dual_obj = 0.0;
  for (int i = 0; i < m.num_rows(); ++i) {
    const double slack = activity[i] - m.rhs(i);
    const double y = s.duals[i];
    switch (m.sense(i)) {
      case RowSense::GreaterEqual:
        CHECK(slack >= -1e-7);
        CHECK(y >= -1e-9);
        break;
      case RowSense::LessEqual:
        CHECK(slack <= 1e-7);
        CHECK(y <= 1e-9);
        break;
      case RowSense::Equal:
        CHECK(std::abs(slack) <= 1e-7);
        break;
    }
    CHECK(std::abs(y * slack) <= 1e-7);
    dual_obj += y * m.rhs(i);
  }
  for (int j = 0; j < m.num_columns(); ++j) {
    double d = m.cost(j);
    for (const Entry& e : m.column(j)) d -= s.duals[e.row] * e.value;
    CHECK(d >= -1e-7);
    CHECK(std::abs(d * s.primal[j]) <= 1e-7);
  }
  CHECK(std::abs(primal_obj - dual_obj) <= 1e-7 * (1 + std::abs(primal_obj)));
}

}  // namespace

TEST_CASE("single variable lower bound") {
  LpModel m;
  m.add_row(RowSense::GreaterEqual, 3.0);
  m.add_column(1.0, col({{0, 1.0}}));
  LpSolution s = solve(m);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(3.0));
  CHECK(s.duals[0] == doctest::Approx(1.0));
  check_optimality(m, s);
}

TEST_CASE("degenerate box x <= 0") {
  LpModel m;
  m.add_row(RowSense::LessEqual, 0.0);
  m.add_column(-1.0, col({{0, 1.0}}));
  LpSolution s = solve(m);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(0.0));
  CHECK(s.primal[0] == doctest::Approx(0.0));
  check_optimality(m, s);
}

TEST_CASE("infeasible and unbounded statuses") {
  LpModel inf;
  inf.add_row(RowSense::GreaterEqual, 2.0);
  inf.add_row(RowSense::LessEqual, 1.0);
  inf.add_column(1.0, col({{0, 1.0}, {1, 1.0}}));
  CHECK(solve(inf).status == LpStatus::Infeasible);

  LpModel unb;
  unb.add_row(RowSense::GreaterEqual, 1.0);
  unb.add_column(-1.0, col({{0, 1.0}}));
  CHECK(solve(unb).status == LpStatus::Unbounded);
}

TEST_CASE("equality rows and dual signs in original senses") {
  // min 2x + 3y  s.t. x + y = 4, x <= 3, y >= 0.5
  LpModel m;
  m.add_row(RowSense::Equal, 4.0);
  m.add_row(RowSense::LessEqual, 3.0);
  m.add_row(RowSense::GreaterEqual, 0.5);
  m.add_column(2.0, col({{0, 1.0}, {1, 1.0}}));
  m.add_column(3.0, col({{0, 1.0}, {2, 1.0}}));
  LpSolution s = solve(m);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(9.0));
  CHECK(s.primal[0] == doctest::Approx(3.0));
  CHECK(s.primal[1] == doctest::Approx(1.0));
  CHECK(s.duals[1] <= 1e-9);
  check_optimality(m, s);
}

TEST_CASE("structural errors") {
  LpModel m;
  m.add_row(RowSense::GreaterEqual, 1.0);
  CHECK_THROWS_AS(m.add_column(1.0, col({{1, 1.0}})), LpStructureError);
  CHECK_THROWS_AS(m.add_column(1.0, col({{-1, 1.0}})), LpStructureError);
  CHECK_THROWS_AS(m.add_column(NAN, col({{0, 1.0}})), LpStructureError);
  CHECK_THROWS_AS(m.add_row(RowSense::Equal, INFINITY), LpStructureError);
  SimplexSolver solver(m);
  CHECK_THROWS_AS(solver.add_column(1.0, col({{3, 1.0}})), LpStructureError);
}

TEST_CASE("duplicate entries are summed and zeros dropped") {
  LpModel m;
  m.add_row(RowSense::GreaterEqual, 1.0);
  m.add_column(1.0, col({{0, 0.5}, {0, 0.5}}));
  REQUIRE(m.column(0).size() == 1);
  CHECK(m.column(0)[0].value == 1.0);
  m.add_column(1.0, col({{0, 0.0}}));
  CHECK(m.column(1).empty());
}

TEST_CASE("add_column: null, improving and duplicate columns") {
  LpModel m;
  m.add_row(RowSense::GreaterEqual, 2.0);
  m.add_row(RowSense::GreaterEqual, 1.0);
  m.add_column(4.0, col({{0, 1.0}}));
  m.add_column(3.0, col({{1, 1.0}}));
  SimplexSolver solver(m);
  LpSolution s0 = solver.solve();
  REQUIRE(s0.status == LpStatus::Optimal);
  CHECK(s0.objective == doctest::Approx(11.0));

  SUBCASE("null column leaves the objective") {
    solver.add_column(0.0, {});
    LpSolution s = solver.solve();
    CHECK(s.objective == doctest::Approx(s0.objective));
    check_optimality(solver.model(), s);
  }
  SUBCASE("improving column strictly decreases the objective") {
    // Covers both rows at cost 5 < 4 + 3.
    solver.add_column(5.0, col({{0, 1.0}, {1, 1.0}}));
    LpSolution s = solver.solve();
    CHECK(s.objective < s0.objective - 1e-9);
    CHECK(s.objective == doctest::Approx(9.0));
    check_optimality(solver.model(), s);
  }
  SUBCASE("duplicate of a basic column") {
    solver.add_column(4.0, col({{0, 1.0}}));
    LpSolution s = solver.solve();
    CHECK(s.objective == doctest::Approx(s0.objective));
    check_optimality(solver.model(), s);
  }
}

TEST_CASE("warm start matches a cold solve over many additions") {
  std::mt19937_64 rng(11);
  LpModel m;
  for (int i = 0; i < 6; ++i) m.add_row(RowSense::GreaterEqual, 1.0 + i % 3);
  for (int i = 0; i < 6; ++i) m.add_column(100.0, col({{i, 1.0}}));
  SimplexSolver solver(m);
  double last = solver.solve().objective;
  std::uniform_int_distribution<int> coef(0, 3), cost(1, 20);
  for (int round = 0; round < 40; ++round) {
    std::vector<Entry> e;
    for (int i = 0; i < 6; ++i)
      if (int v = coef(rng)) e.push_back({i, static_cast<double>(v)});
    solver.add_column(cost(rng), e);
    LpSolution warm = solver.solve();
    LpSolution cold = solve(solver.model());
    REQUIRE(warm.status == LpStatus::Optimal);
    CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-9));
    CHECK(warm.objective <= last + 1e-9);
    check_optimality(solver.model(), warm);
    last = warm.objective;
  }
}

TEST_CASE("random LPs agree with vertex enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 5);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LpModel m = oracle::random_lp(rng, dim(rng), dim(rng), trial % 2 == 0);
    LpSolution s = solve(m);
    oracle::LpResult o = oracle::vertex_enumeration(m);
    CAPTURE(trial);
    REQUIRE(s.status == o.status);
    if (s.status == LpStatus::Optimal) {
      ++optimal;
      CHECK(s.objective == doctest::Approx(o.objective).epsilon(1e-6));
      check_optimality(m, s);
    } else {
      ++infeasible;
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 0);
}

TEST_CASE("deterministic for identical input") {
  std::mt19937_64 rng(5);
  LpModel m = oracle::random_lp(rng, 5, 6, true);
  LpSolution a = solve(m), b = solve(m);
  CHECK(a.objective == b.objective);
  CHECK(a.primal == b.primal);
  CHECK(a.duals == b.duals);
}

TEST_CASE("tableau oracle agrees with vertex enumeration and with the solver on open LPs") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    LpModel m = oracle::random_lp(rng, dim(rng), dim(rng), true);
    oracle::LpResult t = oracle::tableau_simplex(m), v = oracle::vertex_enumeration(m);
    REQUIRE(t.status == v.status);
    if (t.status == LpStatus::Optimal) CHECK(t.objective == doctest::Approx(v.objective).epsilon(1e-9));
  }
  // Negative costs without a bounding row: the solver and the tableau must
  // agree on unboundedness too.
  int unbounded = 0;
  for (int trial = 0; trial < 100; ++trial) {
    LpModel m;
    std::uniform_int_distribution<int> c(-5, 5), r(-6, 6);
    const int rows = dim(rng), cols = dim(rng);
    for (int i = 0; i < rows; ++i) m.add_row(i % 2 ? RowSense::GreaterEqual : RowSense::LessEqual, r(rng));
    for (int j = 0; j < cols; ++j) {
      std::vector<Entry> e;
      for (int i = 0; i < rows; ++i) e.push_back({i, static_cast<double>(c(rng))});
      m.add_column(c(rng), e);
    }
    LpSolution s = solve(m);
    oracle::LpResult t = oracle::tableau_simplex(m);
    CAPTURE(trial);
    REQUIRE(s.status == t.status);
    if (s.status == LpStatus::Optimal) {
      CHECK(s.objective == doctest::Approx(t.objective).epsilon(1e-6));
      check_optimality(m, s);
    }
    if (s.status == LpStatus::Unbounded) ++unbounded;
  }
  CHECK(unbounded > 0);
}
