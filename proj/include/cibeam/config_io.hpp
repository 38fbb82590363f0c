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

#ifndef CIBEAM_CONFIG_IO_HPP_
#define CIBEAM_CONFIG_IO_HPP_

#include <string>

#include "cibeam/types.hpp"

namespace cibeam {

// Three-station desk-scale default: one 16-antenna macro at the origin and
// two 8-antenna picos at +-0.25 km, eight users, QPSK, -60 dBm noise,
// 46/30/30 dBm budgets, margin 1e-4 (10 dB over noise).
NetworkConfig default_desk_config();

// Same layout at full dimensions: 64-antenna macro with 32 chains, two
// 32-antenna picos with 16 chains, 64 users.
NetworkConfig full_dims_config();

// key = value text format, one entry per line, '#' comments. Keys mirror
// the NetworkConfig fields: bs_list (';'-separated entries of
// "class,antennas,rf_chains,power_budget_w,x_km,y_km"), users (a count, or
// explicit "x,y;x,y" positions), noise_power, modulation_order, margins
// (one value or a comma list), ps_magnitude ("auto" or a positive number),
// fairness_weight, seed. Unknown keys are an error. The result is validated.
NetworkConfig parse_config_text(const std::string& text);
NetworkConfig parse_config_file(const std::string& path);

}  // namespace cibeam

#endif  // CIBEAM_CONFIG_IO_HPP_
