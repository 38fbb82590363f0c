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
#include <limits>
#include <vector>

#include <doctest.h>

#include "cibeam/assignment.hpp"
#include "cibeam/rng.hpp"
#include "cibeam/types.hpp"

namespace cibeam {
namespace {

// Domain-level brute force: every mapping of rows to {unassigned, user 0..K-1}
// is scored directly from the definition. Independent of the MILP encoding.
double brute_force_assignment(const Mat& gains, const std::vector<int>* row_owner,
                              const std::vector<int>* rf_caps,
                              double fairness_weight, bool* feasible) {
  const int rows = static_cast<int>(gains.rows());
  const int users = static_cast<int>(gains.cols());
  double best = -std::numeric_limits<double>::infinity();
  *feasible = false;
  std::vector<int> choice(rows, -1);
  long combos = 1;
  for (int r = 0; r < rows; ++r) combos *= users + 1;
  for (long code = 0; code < combos; ++code) {
    long c = code;
    for (int r = 0; r < rows; ++r) {
      choice[r] = static_cast<int>(c % (users + 1)) - 1;
      c /= users + 1;
    }
    Vec user_gain = Vec::Zero(users);
    std::vector<int> covered(users, 0);
    std::vector<int> used(row_owner != nullptr ? rf_caps->size() : 0, 0);
    bool ok = true;
    for (int r = 0; r < rows && ok; ++r) {
      if (choice[r] < 0) continue;
      user_gain[choice[r]] += gains(r, choice[r]);
      covered[choice[r]] = 1;
      if (row_owner != nullptr) {
        int g = (*row_owner)[r];
        if (++used[g] > (*rf_caps)[g]) ok = false;
      }
    }
    for (int k = 0; k < users; ++k) ok = ok && covered[k] == 1;
    if (!ok) continue;
    double obj = user_gain.sum() + fairness_weight * user_gain.minCoeff();
    if (obj > best) best = obj;
    *feasible = true;
  }
  return best;
}

void check_alpha_structure(const AssignmentResult& res, const Mat& gains) {
  REQUIRE(res.alpha.rows() == gains.rows());
  REQUIRE(res.alpha.cols() == gains.cols());
  for (int r = 0; r < res.alpha.rows(); ++r) {
    double row_sum = 0.0;
    for (int k = 0; k < res.alpha.cols(); ++k) {
      const double a = res.alpha(r, k);
      CHECK((std::abs(a) < 1e-9 || std::abs(a - 1.0) < 1e-9));
      row_sum += a;
    }
    CHECK(row_sum <= 1.0 + 1e-9);  // a chain serves at most one user
  }
  for (int k = 0; k < res.alpha.cols(); ++k) {
    CHECK(res.alpha.col(k).sum() >= 1.0 - 1e-9);  // every user is covered
  }
}

Mat frozen_gains() {
  Mat q(3, 2);
  q << 3.0, 1.0,
       1.0, 2.0,
       2.0, 2.0;
  return q;
}

TEST_SUITE("assignment") {

TEST_CASE("exact solver nails the frozen 3x2 instance") {
  const Mat q = frozen_gains();
  AssignmentResult res = solve_rf_assignment(q, 0.5);
  CHECK(res.status == milp::MilpStatus::Optimal);
  CHECK(res.exact);
  // Optimum: row 0 -> user 0, rows 1 and 2 -> user 1; gains (3, 4),
  // objective 7 + 0.5 * 3 = 8.5.
  CHECK(res.objective == doctest::Approx(8.5).epsilon(1e-9));
  CHECK(res.min_user_gain == doctest::Approx(3.0).epsilon(1e-9));
  check_alpha_structure(res, q);
  CHECK(res.alpha(0, 0) == doctest::Approx(1.0));
  CHECK(res.alpha(1, 1) == doctest::Approx(1.0));
  CHECK(res.alpha(2, 1) == doctest::Approx(1.0));
}

TEST_CASE("heuristic is feasible and close on the frozen instance") {
  const Mat q = frozen_gains();
  AssignmentResult res = heuristic_assignment(q, 0.5);
  CHECK(!res.exact);
  check_alpha_structure(res, q);
  CHECK(res.objective >= 8.0);        // no worse than the greedy floor
  CHECK(res.objective <= 8.5 + 1e-9);  // cannot beat the optimum
}

TEST_CASE("exact solver matches brute force on random instances") {
  Rng rng(1618);
  for (int trial = 0; trial < 30; ++trial) {
    const int users = 2 + rng.uniform_int(2);       // 2..3
    const int rows = users + rng.uniform_int(3);    // users..users+2
    Mat q(rows, users);
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k < users; ++k) q(r, k) = rng.uniform(0.0, 3.0);
    const double eps = rng.uniform(0.0, 2.0);
    bool feasible = false;
    const double ref = brute_force_assignment(q, nullptr, nullptr, eps, &feasible);
    REQUIRE(feasible);  // rows >= users always admits a cover
    AssignmentResult res = solve_rf_assignment(q, eps);
    CHECK_MESSAGE(res.objective == doctest::Approx(ref).epsilon(1e-7),
                  "trial ", trial);
    check_alpha_structure(res, q);
    // The heuristic stays feasible and never beats the optimum.
    AssignmentResult heur = heuristic_assignment(q, eps);
    check_alpha_structure(heur, q);
    CHECK(heur.objective <= ref + 1e-7);
  }
}

TEST_CASE("capped solver matches brute force with station budgets") {
  Rng rng(2718);
  for (int trial = 0; trial < 20; ++trial) {
    const int users = 2 + rng.uniform_int(2);  // 2..3
    const std::vector<int> row_owner = {0, 0, 1, 1};
    const int rows = static_cast<int>(row_owner.size());
    std::vector<int> caps = {1 + rng.uniform_int(2), 1 + rng.uniform_int(2)};
    Mat q(rows, users);
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k < users; ++k) q(r, k) = rng.uniform(0.0, 3.0);
    const double eps = 0.5;
    bool feasible = false;
    const double ref =
        brute_force_assignment(q, &row_owner, &caps, eps, &feasible);
    if (!feasible) {
      CHECK_THROWS_AS(solve_code_assignment(q, row_owner, caps, eps),
                      InfeasibleError);
      continue;
    }
    AssignmentResult res = solve_code_assignment(q, row_owner, caps, eps);
    CHECK_MESSAGE(res.objective == doctest::Approx(ref).epsilon(1e-7),
                  "trial ", trial);
    check_alpha_structure(res, q);
    // Caps hold row-wise.
    for (std::size_t g = 0; g < caps.size(); ++g) {
      double active = 0.0;
      for (int r = 0; r < rows; ++r)
        if (row_owner[r] == static_cast<int>(g)) active += res.alpha.row(r).sum();
      CHECK(active <= caps[g] + 1e-9);
    }
    AssignmentResult heur = heuristic_assignment(q, row_owner, caps, eps);
    check_alpha_structure(heur, q);
    CHECK(heur.objective <= ref + 1e-7);
  }
}

TEST_CASE("capacity shortfalls raise InfeasibleError") {
  Mat q(1, 2);
  q << 1.0, 2.0;
  CHECK_THROWS_AS(solve_rf_assignment(q, 0.5), InfeasibleError);
  CHECK_THROWS_AS(heuristic_assignment(q, 0.5), InfeasibleError);

  Mat q2(4, 2);
  q2.setOnes();
  // Two stations, but only one may activate anything.
  CHECK_THROWS_AS(solve_code_assignment(q2, {0, 0, 1, 1}, {1, 0}, 0.5),
                  InfeasibleError);
}

TEST_CASE("gain scaling changes the objective but not the assignment") {
  const Mat q = frozen_gains();
  AssignmentResult base = solve_rf_assignment(q, 0.5);
  AssignmentResult scaled = solve_rf_assignment(1e6 * q, 0.5);
  CHECK(scaled.alpha == base.alpha);
  CHECK(scaled.objective == doctest::Approx(1e6 * base.objective).epsilon(1e-9));
}

TEST_CASE("gains must be finite, non-negative, and non-empty") {
  Mat bad(1, 1);
  bad << -1.0;
  CHECK_THROWS_AS(solve_rf_assignment(bad, 0.5), std::invalid_argument);
  bad << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solve_rf_assignment(bad, 0.5), std::invalid_argument);
}

TEST_CASE("gain_matrix_continuous repeats station energy per chain") {
  NetworkConfig cfg;
  BsSpec a, b;
  a.antennas = 2;
  a.rf_chains = 2;
  b.antennas = 1;
  b.rf_chains = 1;
  b.bs_class = BsClass::Pico;
  cfg.bs_list = {a, b};
  cfg.users.resize(2);

  ChannelSet channels;
  CMat h0(2, 2), h1(1, 2);
  h0 << Complex(1.0, 0.0), Complex(0.0, 2.0),
        Complex(0.0, 1.0), Complex(1.0, 0.0);
  h1 << Complex(3.0, 0.0), Complex(0.0, 0.0);
  channels.per_bs = {h0, h1};

  RfChainMap chains = RfChainMap::from_config(cfg);
  Mat gains = gain_matrix_continuous(channels, chains);
  REQUIRE(gains.rows() == 3);
  REQUIRE(gains.cols() == 2);
  // Chains 0 and 1 belong to station 0 and see identical column energies.
  CHECK(gains(0, 0) == doctest::Approx(2.0));
  CHECK(gains(1, 0) == doctest::Approx(2.0));
  CHECK(gains(0, 1) == doctest::Approx(5.0));
  CHECK(gains(2, 0) == doctest::Approx(9.0));
  CHECK(gains(2, 1) == doctest::Approx(0.0));
}

TEST_CASE("gain_matrix_codebook projects with the plain transpose") {
  ChannelSet channels;
  CMat h(2, 1);
  h << Complex(1.0, 0.0), Complex(0.0, 1.0);
  channels.per_bs = {h};
  CMat code(2, 1);
  code << Complex(1.0, 0.0), Complex(0.0, 1.0);
  // c^T h = 1 + j*j = 0; the adjoint would give |1 + 1|^2 = 4.
  Mat gains = gain_matrix_codebook(channels, {code});
  REQUIRE(gains.rows() == 1);
  CHECK(gains(0, 0) == doctest::Approx(0.0));
}

}  // TEST_SUITE

}  // namespace
}  // namespace cibeam
