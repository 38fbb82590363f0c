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

#ifndef CIBEAM_CONVEX_HPP_
#define CIBEAM_CONVEX_HPP_

#include <vector>

#include "cibeam/types.hpp"

namespace cibeam {

// minimize    x' P0 x + q0' x
// subject to  lin_coeffs x <= lin_rhs            (row-wise)
//             x' quad[j].P x + quad[j].q' x <= quad[j].rhs
// P0 and every quad[j].P must be symmetric positive semidefinite.
struct QuadConstraint {
  Mat P;
  Vec q;
  double rhs = 0.0;
};

struct QcqpProblem {
  Mat P0;
  Vec q0;
  Mat lin_coeffs;
  Vec lin_rhs;
  std::vector<QuadConstraint> quad;

  int dim() const { return static_cast<int>(P0.rows()); }
};

struct QcqpOptions {
  double tol = 1e-7;
  int max_iter = 200;
};

struct KktResiduals {
  double stationarity = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  double complementarity = 0.0;

  bool within(double tol) const {
    return stationarity <= tol && primal <= tol && dual <= tol &&
           complementarity <= tol;
  }
};

struct QcqpSolution {
  SolveStatus status = SolveStatus::Ok;
  Vec x;
  double objective = 0.0;
  Vec lambda_lin;
  Vec lambda_quad;
  KktResiduals residuals;
  int iterations = 0;
  // Diagnostics for the infeasible cases: the largest linear-constraint
  // violation the relaxation could not remove, and the value of each
  // quadratic form at the unconstrained-by-quadratics optimum.
  double phase1_violation = 0.0;
  Vec uncapped_quad_values;
};

// Primal-dual interior-point solve. Feasibility of the linear system is
// decided first by an exact LP on the maximum violation; quadratic
// constraints are then screened at the linear-only optimum and, when slack,
// polished with the full barrier. Deterministic for identical inputs.
QcqpSolution solve_qcqp(const QcqpProblem& problem, const QcqpOptions& options = {});

// Independent KKT check used by tests and callers; shares the residual
// definitions with the solver's convergence test:
//   stationarity: || dL/dx ||_inf / max(1, ||grad f0||_inf)
//   primal:       max constraint violation, each row scaled by its own data
//   dual:         max(0, -min lambda)
//   complementarity: max_i |lambda_i * f_i(x)| / max(1, |f0(x)|)
KktResiduals verify_kkt(const QcqpProblem& problem, const Vec& x,
                        const Vec& lambda_lin, const Vec& lambda_quad);

}  // namespace cibeam

#endif  // CIBEAM_CONVEX_HPP_
