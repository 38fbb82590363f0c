// Copyright 2026 the cibeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "cibeam/milp.hpp"
#include "cibeam/rng.hpp"
#include "oracles.hpp"

namespace cibeam {
namespace {

using milp::LpStatus;
using milp::MilpModel;
using milp::MilpStatus;
using milp::Sense;

// Random bounded LP: boxed variables, mixed-sense rows. Bounded by
// construction, so the vertex oracle is authoritative on it.
MilpModel random_lp(Rng& rng, int n, int m) {
  MilpModel model;
  for (int j = 0; j < n; ++j) {
    double lo = rng.uniform(-2.0, 0.0);
    double hi = lo + rng.uniform(0.5, 3.0);
    model.add_variable(lo, hi, rng.uniform(-1.0, 1.0));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 0; j < n; ++j) {
      double c = rng.uniform(-1.0, 1.0);
      if (std::abs(c) > 0.2) coeffs.emplace_back(j, c);
    }
    if (coeffs.empty()) coeffs.emplace_back(rng.uniform_int(n), 1.0);
    double rhs = rng.uniform(-1.0, 2.0);
    Sense sense = (i % 3 == 0) ? Sense::Ge : Sense::Le;
    model.add_row(std::move(coeffs), sense, rhs);
  }
  return model;
}

MilpModel random_milp(Rng& rng, int nb, int nc, int m) {
  MilpModel model;
  for (int j = 0; j < nb; ++j) model.add_binary(rng.uniform(-1.0, 2.0));
  for (int j = 0; j < nc; ++j) {
    model.add_variable(0.0, rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0));
  }
  const int n = nb + nc;
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 0; j < n; ++j) {
      double c = rng.uniform(-1.0, 1.0);
      if (std::abs(c) > 0.3) coeffs.emplace_back(j, c);
    }
    if (coeffs.empty()) coeffs.emplace_back(rng.uniform_int(n), 1.0);
    model.add_row(std::move(coeffs), Sense::Le, rng.uniform(0.0, 2.0));
  }
  return model;
}

TEST_SUITE("milp") {

TEST_CASE("solve_lp maximizes a hand-checked model") {
  MilpModel model;
  int x = model.add_variable(0.0, 10.0, 3.0);
  int y = model.add_variable(0.0, 10.0, 2.0);
  model.add_row({{x, 1.0}, {y, 1.0}}, Sense::Le, 4.0);
  model.add_row({{x, 1.0}, {y, 3.0}}, Sense::Le, 6.0);
  auto sol = milp::solve_lp(model);
  REQUIRE(sol.status == LpStatus::Optimal);
  // Optimum at x = 4, y = 0: 3*4 = 12.
  CHECK(sol.objective == doctest::Approx(12.0).epsilon(1e-9));
  CHECK(sol.x[x] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(sol.x[y] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("solve_lp honors equality rows and negative bounds") {
  MilpModel model;
  int x = model.add_variable(-5.0, 5.0, 1.0);
  int y = model.add_variable(-5.0, 5.0, -1.0);
  model.add_row({{x, 1.0}, {y, 1.0}}, Sense::Eq, 1.0);
  auto sol = milp::solve_lp(model);
  REQUIRE(sol.status == LpStatus::Optimal);
  // Max x - y on x + y = 1 inside the box: x = 5, y = -4.
  CHECK(sol.objective == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(sol.x[x] + sol.x[y] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solve_lp flags infeasible and unbounded models") {
  {
    MilpModel model;
    int x = model.add_variable(0.0, 1.0, 1.0);
    model.add_row({{x, 1.0}}, Sense::Ge, 2.0);
    CHECK(milp::solve_lp(model).status == LpStatus::Infeasible);
  }
  {
    MilpModel model;
    (void)model.add_variable(0.0, milp::kInf, 1.0);
    CHECK(milp::solve_lp(model).status == LpStatus::Unbounded);
  }
}

TEST_CASE("solve_lp agrees with vertex enumeration on random models") {
  Rng rng(20260101);
  int feasible_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int n = 2 + rng.uniform_int(4);   // 2..5 variables
    int m = 1 + rng.uniform_int(6);   // 1..6 rows
    MilpModel model = random_lp(rng, n, m);
    auto sol = milp::solve_lp(model);
    auto ref = test::lp_vertex_oracle(model);
    if (ref.feasible) {
      ++feasible_seen;
      REQUIRE_MESSAGE(sol.status == LpStatus::Optimal, "trial ", trial);
      CHECK_MESSAGE(
          sol.objective ==
              doctest::Approx(ref.objective).epsilon(1e-7).scale(1.0),
          "trial ", trial);
    } else {
      REQUIRE_MESSAGE(sol.status == LpStatus::Infeasible, "trial ", trial);
    }
  }
  // The generator must exercise both branches to mean anything.
  CHECK(feasible_seen > 10);
  CHECK(feasible_seen < 80);
}

TEST_CASE("solve_lp is deterministic") {
  Rng rng(77);
  MilpModel model = random_lp(rng, 4, 5);
  auto a = milp::solve_lp(model);
  auto b = milp::solve_lp(model);
  CHECK(a.status == b.status);
  if (a.status == LpStatus::Optimal) {
    CHECK(a.objective == b.objective);
    CHECK(a.x == b.x);
  }
}

TEST_CASE("solve_binary_milp cracks a knapsack by hand") {
  MilpModel model;
  int a = model.add_binary(8.0);
  int b = model.add_binary(11.0);
  int c = model.add_binary(6.0);
  int d = model.add_binary(4.0);
  model.add_row({{a, 5.0}, {b, 7.0}, {c, 4.0}, {d, 3.0}}, Sense::Le, 14.0);
  auto sol = milp::solve_binary_milp(model);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(21.0).epsilon(1e-9));
  CHECK(sol.x[a] == doctest::Approx(0.0));
  CHECK(sol.x[b] == doctest::Approx(1.0));
  CHECK(sol.x[c] == doctest::Approx(1.0));
  CHECK(sol.x[d] == doctest::Approx(1.0));
  CHECK(sol.bound >= sol.objective - 1e-9);
}

TEST_CASE("solve_binary_milp detects infeasibility") {
  MilpModel model;
  int a = model.add_binary(1.0);
  int b = model.add_binary(1.0);
  model.add_row({{a, 1.0}, {b, 1.0}}, Sense::Ge, 3.0);
  CHECK(milp::solve_binary_milp(model).status == MilpStatus::Infeasible);
}

TEST_CASE("solve_binary_milp agrees with exhaustive enumeration") {
  Rng rng(424242);
  int feasible_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int nb = 2 + rng.uniform_int(7);  // 2..8 binaries
    int nc = rng.uniform_int(3);      // 0..2 continuous
    int m = 1 + rng.uniform_int(5);
    MilpModel model = random_milp(rng, nb, nc, m);
    auto sol = milp::solve_binary_milp(model);
    auto ref = test::milp_enumeration_oracle(model);
    if (ref.feasible) {
      ++feasible_seen;
      REQUIRE_MESSAGE(sol.status == MilpStatus::Optimal, "trial ", trial);
      CHECK_MESSAGE(
          sol.objective ==
              doctest::Approx(ref.objective).epsilon(1e-7).scale(1.0),
          "trial ", trial);
      // Bound must certify the optimum.
      CHECK(sol.bound >= sol.objective - 1e-7);
      // Every binary must land on a bit.
      for (int j = 0; j < nb; ++j) {
        CHECK(std::abs(sol.x[j] - std::round(sol.x[j])) < 1e-7);
      }
    } else {
      REQUIRE_MESSAGE(sol.status == MilpStatus::Infeasible, "trial ", trial);
    }
  }
  CHECK(feasible_seen > 30);
}

TEST_CASE("solve_binary_milp respects Ge rows that force ones") {
  MilpModel model;
  int a = model.add_binary(-1.0);
  int b = model.add_binary(-2.0);
  model.add_row({{a, 1.0}, {b, 1.0}}, Sense::Ge, 1.0);
  auto sol = milp::solve_binary_milp(model);
  REQUIRE(sol.status == MilpStatus::Optimal);
  // Cheapest way to satisfy the cover: pick only `a`.
  CHECK(sol.objective == doctest::Approx(-1.0));
  CHECK(sol.x[a] == doctest::Approx(1.0));
  CHECK(sol.x[b] == doctest::Approx(0.0));
}

TEST_CASE("dump_lp_format renders all sections deterministically") {
  MilpModel model;
  int x = model.add_variable(0.0, 2.0, 1.5);
  int y = model.add_binary(1.0);
  model.add_row({{x, 1.0}, {y, -2.0}}, Sense::Le, 3.0);
  std::string text = milp::dump_lp_format(model);
  CHECK(text.find("maximize") != std::string::npos);
  CHECK(text.find("subject to") != std::string::npos);
  CHECK(text.find("bounds") != std::string::npos);
  CHECK(text.find("binary") != std::string::npos);
  CHECK(text.find("x0") != std::string::npos);
  CHECK(text.find("<=") != std::string::npos);
  CHECK(text == milp::dump_lp_format(model));
}

}  // TEST_SUITE

}  // namespace
}  // namespace cibeam
