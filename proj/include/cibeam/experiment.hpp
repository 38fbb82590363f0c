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

#ifndef CIBEAM_EXPERIMENT_HPP_
#define CIBEAM_EXPERIMENT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cibeam/channel.hpp"
#include "cibeam/schemes.hpp"
#include "cibeam/types.hpp"

namespace cibeam {

// Monte Carlo sweep description. The grid is interpreted per scheme: for
// margin-swept schemes each value is a detection margin in amplitude units;
// for the zero-forcing family it is the total radiated budget in dBm, split
// across stations proportionally to their configured budgets.
struct SweepSpec {
  std::vector<SchemeId> schemes;
  std::vector<double> grid;
  int trials = 200;
  int symbols_per_trial = 50;
  std::uint64_t master_seed = 1;
  // Margin sweeps explore the demanded operating point; for the coordinated
  // CI schemes per-station caps are off unless explicitly enforced so the
  // reported power is the cost of meeting the margin. The zero-forcing
  // family is always budgeted, and the uncoordinated baseline always honors
  // the configured per-station budgets (infeasible stations drop their
  // users, which counts those symbols as errors).
  bool enforce_budgets_ci = false;
  bool exact_assignment = true;
  GeometrySpec geometry;
  QcqpOptions qcqp;
  milp::MilpOptions milp;
};

struct PointResult {
  SchemeId scheme = SchemeId::CiContinuous;
  std::string sweep_var;  // "margin" or "budget_dbm"
  double sweep_value = 0.0;
  double tnr_db = 0.0;
  double mean_power_w = 0.0;
  double ser = 0.0;
  double ser_stderr = 0.0;
  double feasibility_rate = 0.0;
  long long symbol_errors = 0;
  long long symbols_attempted = 0;
  int trials = 0;
  int symbols_per_trial = 0;
  std::uint64_t seed = 0;
};

// Replaces the built-in detector in estimate_ser; receives the noisy sample
// and the modulation order, returns the detected index.
using DetectorHook = std::function<int(Complex, int)>;

// One operating point: `trials` independent drops (user positions and
// channels redrawn), `symbols_per_trial` slots each. Per-trial streams are
// seeded from (master_seed, scheme, point_index, trial) so points and
// trials are independent and reproducible in isolation. Draw order within
// a trial: positions, channels, then per slot the data symbols followed by
// one noise sample per user. Slots whose precoding fails count their
// symbols as errors and are excluded from the power average.
PointResult estimate_ser(const NetworkConfig& config, SchemeId scheme,
                         int point_index, double value, const SweepSpec& spec,
                         const DetectorHook& detector = {});

std::vector<PointResult> run_sweep(const NetworkConfig& config, const SweepSpec& spec);

// CSV rendering with a fixed header and %.17g numeric formatting, so equal
// results are byte-identical files.
std::string to_csv(const std::vector<PointResult>& rows);
void write_csv(const std::string& path, const std::vector<PointResult>& rows);

// Coefficients a central coordinator must move per channel coherence block
// of `delta` symbol slots: the analog phases once per block, plus digital
// precoders that are per-slot for the CI schemes and per-block (scaled by
// slot count K per station per slot) for zero-forcing.
struct OverheadReport {
  SchemeId scheme = SchemeId::CiContinuous;
  long long delta = 0;
  long long analog_once = 0;
  long long digital_per_block = 0;
  long long digital_per_slot = 0;
  long long total = 0;
};

OverheadReport backhaul_overhead(const NetworkConfig& config, long long delta,
                                 SchemeId scheme);

}  // namespace cibeam

#endif  // CIBEAM_EXPERIMENT_HPP_
