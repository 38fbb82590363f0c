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

#ifndef CIBEAM_SCHEMES_HPP_
#define CIBEAM_SCHEMES_HPP_

#include <string>
#include <vector>

#include "cibeam/analog.hpp"
#include "cibeam/assignment.hpp"
#include "cibeam/convex.hpp"
#include "cibeam/digital.hpp"
#include "cibeam/types.hpp"

namespace cibeam {

enum class SchemeId {
  CiContinuous,
  CiCodebook,
  ZfContinuous,
  ZfCodebook,
  UncoordinatedCi,
};

// "ci-continuous", "ci-codebook", "zf-continuous", "zf-codebook",
// "uncoordinated-ci". Throws std::invalid_argument on anything else.
SchemeId parse_scheme(const std::string& name);
std::string scheme_name(SchemeId scheme);
// Schemes whose operating point is the detection margin (the zero-forcing
// family sweeps the power budget instead).
bool is_margin_swept(SchemeId scheme);
bool uses_codebook(SchemeId scheme);

struct PipelineOptions {
  bool exact_assignment = true;
  bool enforce_budgets = true;
  milp::MilpOptions milp;
  QcqpOptions qcqp;
};

// Channel-rate stages: chain/code assignment and the analog precoders.
// Valid for one channel realization, reusable across symbol slots.
struct StagePrep {
  AssignmentResult assignment;
  AnalogPrecoderSet analog;
};

StagePrep prepare_stages(SchemeId scheme, const NetworkConfig& config,
                         const ChannelSet& channels, const PipelineOptions& options);

struct SchemeRun {
  StagePrep prep;
  PrecodeSolution solution;
};

// Full coordinated pipeline for one symbol slot. Errors from the stages
// propagate with the stage name prefixed; InfeasibleError keeps its type.
SchemeRun run_coordinated(SchemeId scheme, const NetworkConfig& config,
                          const ChannelSet& channels, const SymbolVector& symbols,
                          const PipelineOptions& options);

// Association for the uncoordinated baseline: users in ascending index pick
// the strongest station (by channel energy, ties to the lower station index)
// that still has a free RF chain. Throws InfeasibleError when the chains
// cannot cover all users.
std::vector<int> associate_users(const NetworkConfig& config,
                                 const ChannelSet& channels);

// Uncoordinated baseline: each station independently runs its own chain
// assignment and CI precoding for its associated users only, blind to the
// interference it causes elsewhere.
struct UncoordPrep {
  std::vector<int> association;
  std::vector<std::vector<int>> bs_users;
  std::vector<AssignmentResult> per_bs_assignment;
  AnalogPrecoderSet analog;
};

UncoordPrep prepare_uncoordinated(const NetworkConfig& config,
                                  const ChannelSet& channels,
                                  const PipelineOptions& options);

struct UncoordRun {
  PrecodeSolution solution;
  // Per user: true when its serving station solved its own CI problem.
  // Users of a failed station are erased (their ci slack is NaN) and count
  // as symbol errors downstream.
  std::vector<char> served;
  int failed_stations = 0;
};

UncoordRun uncoordinated_digital(const UncoordPrep& prep, const NetworkConfig& config,
                                 const ChannelSet& channels,
                                 const SymbolVector& symbols,
                                 const PipelineOptions& options);

UncoordRun run_uncoordinated(const NetworkConfig& config, const ChannelSet& channels,
                             const SymbolVector& symbols,
                             const PipelineOptions& options);

}  // namespace cibeam

#endif  // CIBEAM_SCHEMES_HPP_
