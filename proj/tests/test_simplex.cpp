#include <catch2/catch.hpp>

#include "teamcut/simplex.hpp"

using namespace teamcut::lp;

TEST_CASE("simplex solves a textbook LP") {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18, x,y >= 0 -> (2, 6), 36
  SimplexSolver s;
  const int x = s.add_variable(3.0, 0.0, kInf);
  const int y = s.add_variable(5.0, 0.0, kInf);
  s.add_row({{x, 1.0}}, Relation::LessEqual, 4.0);
  s.add_row({{y, 2.0}}, Relation::LessEqual, 12.0);
  s.add_row({{x, 3.0}, {y, 2.0}}, Relation::LessEqual, 18.0);
  const Result r = s.solve();
  REQUIRE(r.status == Status::Optimal);
  REQUIRE(r.objective == Approx(36.0));
  REQUIRE(r.x[static_cast<std::size_t>(x)] == Approx(2.0));
  REQUIRE(r.x[static_cast<std::size_t>(y)] == Approx(6.0));
}

TEST_CASE("simplex handles equality rows and variable bounds") {
  // max x1 + 2x2 + 3x3  s.t. x1 + x2 + x3 = 1, 0 <= xi <= 0.6 -> x3=0.6, x2=0.4
  SimplexSolver s;
  const int x1 = s.add_variable(1.0, 0.0, 0.6);
  const int x2 = s.add_variable(2.0, 0.0, 0.6);
  const int x3 = s.add_variable(3.0, 0.0, 0.6);
  s.add_row({{x1, 1.0}, {x2, 1.0}, {x3, 1.0}}, Relation::Equal, 1.0);
  const Result r = s.solve();
  REQUIRE(r.status == Status::Optimal);
  REQUIRE(r.objective == Approx(3.0 * 0.6 + 2.0 * 0.4));
  REQUIRE(r.x[static_cast<std::size_t>(x3)] == Approx(0.6));
  REQUIRE(r.x[static_cast<std::size_t>(x2)] == Approx(0.4));
  REQUIRE(r.x[static_cast<std::size_t>(x1)] == Approx(0.0).margin(1e-9));
}

TEST_CASE("simplex reports infeasible systems") {
  SimplexSolver s;
  const int x = s.add_variable(1.0, 0.0, 1.0);
  s.add_row({{x, 1.0}}, Relation::Equal, 2.0);  // x <= 1 cannot reach 2
  REQUIRE(s.solve().status == Status::Infeasible);
}

TEST_CASE("simplex reports unbounded rays") {
  SimplexSolver s;
  const int x = s.add_variable(1.0, 0.0, kInf);
  const int y = s.add_variable(0.0, 0.0, kInf);
  s.add_row({{x, 1.0}, {y, -1.0}}, Relation::LessEqual, 1.0);
  REQUIRE(s.solve().status == Status::Unbounded);
}

TEST_CASE("singleton rows fold into bounds") {
  SimplexSolver s;
  const int x = s.add_variable(1.0, 0.0, kInf);
  s.add_row({{x, 2.0}}, Relation::LessEqual, 1.0);  // x <= 0.5
  const Result r = s.solve();
  REQUIRE(r.status == Status::Optimal);
  REQUIRE(r.objective == Approx(0.5));
}

TEST_CASE("variables without rows are parked at their preferred bound") {
  SimplexSolver s;
  const int a = s.add_variable(2.0, 0.0, 1.0);   // wants upper
  const int b = s.add_variable(-1.0, 0.0, 1.0);  // wants lower
  const int c = s.add_variable(1.0, 0.0, 1.0);
  s.add_row({{c, 1.0}}, Relation::LessEqual, 0.25);
  const Result r = s.solve();
  REQUIRE(r.status == Status::Optimal);
  REQUIRE(r.x[static_cast<std::size_t>(a)] == Approx(1.0));
  REQUIRE(r.x[static_cast<std::size_t>(b)] == Approx(0.0).margin(1e-12));
  REQUIRE(r.objective == Approx(2.0 + 0.25));
}

TEST_CASE("degenerate LPs terminate deterministically") {
  // heavily degenerate assignment-style LP; run twice, expect identical output
  auto build = [] {
    SimplexSolver s;
    std::vector<int> vars;
    for (int i = 0; i < 12; ++i) vars.push_back(s.add_variable(1.0, 0.0, 1.0));
    for (int r = 0; r < 4; ++r) {
      std::vector<std::pair<int, double>> terms;
      for (int c = 0; c < 3; ++c) terms.push_back({vars[static_cast<std::size_t>(r * 3 + c)], 1.0});
      s.add_row(terms, Relation::Equal, 1.0);
    }
    for (int c = 0; c < 3; ++c) {
      std::vector<std::pair<int, double>> terms;
      for (int r = 0; r < 4; ++r) terms.push_back({vars[static_cast<std::size_t>(r * 3 + c)], 1.0});
      s.add_row(terms, Relation::LessEqual, 2.0);
    }
    return s;
  };
  SimplexSolver sa = build();
  SimplexSolver sb = build();
  const Result a = sa.solve();
  const Result b = sb.solve();
  REQUIRE(a.status == Status::Optimal);
  REQUIRE(a.objective == Approx(4.0));
  REQUIRE(a.x == b.x);
  REQUIRE(a.iterations == b.iterations);
}

TEST_CASE("iteration limit surfaces as a status") {
  SimplexOptions options;
  options.max_iterations = 1;
  SimplexSolver s(options);
  const int x = s.add_variable(1.0, 0.0, kInf);
  const int y = s.add_variable(2.0, 0.0, kInf);
  s.add_row({{x, 1.0}, {y, 1.0}}, Relation::LessEqual, 4.0);
  s.add_row({{x, 1.0}, {y, 3.0}}, Relation::LessEqual, 6.0);
  REQUIRE(s.solve().status == Status::IterationLimit);
}

TEST_CASE("solver object can grow and re-solve") {
  SimplexSolver s;
  const int x = s.add_variable(1.0, 0.0, 1.0);
  const int y = s.add_variable(1.0, 0.0, 1.0);
  s.add_row({{x, 1.0}, {y, 1.0}}, Relation::LessEqual, 1.5);
  REQUIRE(s.solve().objective == Approx(1.5));
  s.add_row({{x, 1.0}}, Relation::LessEqual, 0.25);
  const Result r = s.solve();
  REQUIRE(r.objective == Approx(1.25));
  REQUIRE(r.x[static_cast<std::size_t>(x)] == Approx(0.25));
}
