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

#ifndef CIBEAM_ASSIGNMENT_HPP_
#define CIBEAM_ASSIGNMENT_HPP_

#include <vector>

#include "cibeam/milp.hpp"
#include "cibeam/types.hpp"

namespace cibeam {

// Candidate gains for the RF-chain assignment: row r is a chain (station-
// major order), column k a user, entry ||h_gk||^2 for the chain's station.
Mat gain_matrix_continuous(const ChannelSet& channels, const RfChainMap& chains);

// Candidate gains for codebook selection: row c is a codebook column
// (station-major order), entry |c_c^T h_gk|^2 against its station's channel.
Mat gain_matrix_codebook(const ChannelSet& channels,
                         const std::vector<CMat>& codebook_per_bs);

struct AssignmentResult {
  // rows x users binary matrix: alpha(r, k) == 1 when row r serves user k.
  Mat alpha;
  // Total gain plus fairness_weight times the minimum per-user gain, on the
  // original (unnormalized) gain scale.
  double objective = 0.0;
  double min_user_gain = 0.0;
  milp::MilpStatus status = milp::MilpStatus::Optimal;
  bool exact = true;
  long nodes = 0;
};

// Exact assignment of chains to users: each chain serves at most one user,
// each user gets at least one chain, objective = total assigned gain plus
// fairness_weight * min per-user gain. Gains are normalized by their maximum
// before entering the solver (the argmax is unchanged) and the reported
// objective is mapped back. Throws InfeasibleError when rows < users.
AssignmentResult solve_rf_assignment(const Mat& gains, double fairness_weight,
                                     const milp::MilpOptions& options = {});

// Codebook variant: identical structure plus a per-station cap — station g
// may activate at most rf_caps[g] of its codebook columns. row_owner[c] is
// the station owning row c. Throws InfeasibleError when the caps cannot
// cover all users.
AssignmentResult solve_code_assignment(const Mat& gains,
                                       const std::vector<int>& row_owner,
                                       const std::vector<int>& rf_caps,
                                       double fairness_weight,
                                       const milp::MilpOptions& options = {});

// Greedy seeding (best gain first, one row per user) followed by residual
// row assignment and first-improvement local search over single-row moves
// and pairwise swaps. Deterministic; same feasibility model and objective
// as the exact solvers. The capped overload mirrors solve_code_assignment.
AssignmentResult heuristic_assignment(const Mat& gains, double fairness_weight);
AssignmentResult heuristic_assignment(const Mat& gains,
                                      const std::vector<int>& row_owner,
                                      const std::vector<int>& rf_caps,
                                      double fairness_weight);

}  // namespace cibeam

#endif  // CIBEAM_ASSIGNMENT_HPP_
