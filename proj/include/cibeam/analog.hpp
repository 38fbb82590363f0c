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

#ifndef CIBEAM_ANALOG_HPP_
#define CIBEAM_ANALOG_HPP_

#include <vector>

#include "cibeam/assignment.hpp"
#include "cibeam/types.hpp"

namespace cibeam {

// Per-station phase-shifter magnitudes: the configured common value, or
// 1/sqrt(antennas) per station when the config leaves it at zero.
std::vector<double> resolve_ps_magnitudes(const NetworkConfig& config);

// Station-major DFT codebooks: station g contributes antennas(g) columns,
// column c entry n equal to magnitude * exp(-j*2*pi*n*c/antennas(g)).
struct Codebook {
  std::vector<CMat> per_bs;
  std::vector<int> row_owner;  // global column index -> station

  int total_columns() const;
};

Codebook build_dft_codebook(const NetworkConfig& config,
                            const std::vector<double>& magnitudes);

// Conjugate-phase columns: chain r assigned to user k points at that user
// with entries magnitude * exp(-j * arg(h_gk[n])). Unassigned chains
// produce no column; columns appear in ascending chain order.
AnalogPrecoderSet build_continuous_analog(const ChannelSet& channels,
                                          const AssignmentResult& assignment,
                                          const RfChainMap& chains,
                                          const std::vector<double>& magnitudes);

// Selects the codebook columns activated by the assignment, in ascending
// code order per station; bit-identical to the codebook entries. Throws
// std::invalid_argument when a station exceeds its RF-chain count.
AnalogPrecoderSet build_codebook_analog(const Codebook& codebook,
                                        const AssignmentResult& assignment,
                                        const NetworkConfig& config);

}  // namespace cibeam

#endif  // CIBEAM_ANALOG_HPP_
