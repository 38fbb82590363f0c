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

#ifndef CIBEAM_MILP_HPP_
#define CIBEAM_MILP_HPP_

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cibeam/types.hpp"

namespace cibeam::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Le, Ge, Eq };

struct Variable {
  double lower = 0.0;
  double upper = kInf;
  bool binary = false;
};

struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  Sense sense = Sense::Le;
  double rhs = 0.0;
};

// A maximization problem over bounded continuous and binary variables.
// Binary variables are declared with bounds [0, 1]; the LP relaxation
// treats them as continuous.
struct MilpModel {
  std::vector<Variable> vars;
  std::vector<Row> rows;
  std::vector<double> objective;

  int add_variable(double lower, double upper, double obj_coeff = 0.0);
  int add_binary(double obj_coeff = 0.0);
  void add_row(std::vector<std::pair<int, double>> coeffs, Sense sense, double rhs);
  int num_vars() const { return static_cast<int>(vars.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double objective = 0.0;
};

// Dense bounded-variable two-phase simplex. Deterministic: Dantzig pricing
// with all ties broken toward the lowest index, switching to Bland's rule
// after a run of degenerate pivots. Throws std::runtime_error only if the
// iteration safety cap is hit.
LpSolution solve_lp(const MilpModel& model);

struct MilpOptions {
  long node_limit = 1000000;
  // Wall-clock safety valve in seconds; 0 disables it. A nonzero limit can
  // make results depend on machine speed, so it stays off by default.
  double time_limit_s = 0.0;
  double feas_tol = 1e-9;
  double int_tol = 1e-9;
};

enum class MilpStatus { Optimal, Infeasible, GapLimited };

struct MilpSolution {
  MilpStatus status = MilpStatus::Infeasible;
  Vec x;
  double objective = 0.0;
  double bound = 0.0;  // best proven upper bound on the optimum
  long nodes = 0;
};

// Best-first branch and bound over the binary variables: nodes ordered by
// LP bound (ties by creation order), branching on the most fractional
// binary (ties toward the lowest index), zero branch explored first.
MilpSolution solve_binary_milp(const MilpModel& model, const MilpOptions& options = {});

// LP-style plain-text rendering of a model for debugging; the layout is
// described in the README.
std::string dump_lp_format(const MilpModel& model);

}  // namespace cibeam::milp

#endif  // CIBEAM_MILP_HPP_
