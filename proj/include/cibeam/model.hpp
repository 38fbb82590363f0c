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

#ifndef CIBEAM_MODEL_HPP_
#define CIBEAM_MODEL_HPP_

#include <vector>

#include "cibeam/types.hpp"

namespace cibeam {

// M-PSK constellation point exp(j*2*pi*m/M). Quadrantal points (multiples
// of pi/2) are exact, and off-axis points have bit-symmetric components
// across quadrants. Throws std::domain_error for m outside [0, M) or M < 1.
Complex psk_symbol(int m, int M);

// Maximum-correlation M-PSK detection: argmax_m Re(y * conj(psk_symbol(m))).
// Exact ties resolve to the smaller index, so y == 0 returns 0. Throws
// std::domain_error for non-finite y or M < 1.
int detect_psk(Complex y, int M);

SymbolVector make_symbols(const std::vector<int>& indices, int modulation_order);

// Per-user CI geometry for M-PSK with the given margins (one per user).
CiGeometry make_ci_geometry(int modulation_order, const Vec& margins);

// Noise-free received samples y_k = sum_g h_gk^T A_g b_g (plain transpose,
// no conjugation). digital[g] must match the column count of analog.per_bs[g].
CVec received_nominal(const ChannelSet& channels, const AnalogPrecoderSet& analog,
                      const std::vector<CVec>& digital);

// Signed distance of the symbol-aligned sample yhat = conj(s) * y to the
// boundary of the CI region {|Im| <= (Re - gamma) * tan(theta)}: positive
// inside, negative outside. theta >= pi/2 selects the half-plane region
// Re >= gamma (binary signalling).
double ci_slack(Complex y, Complex s, double gamma, double theta);

struct PowerReport {
  Vec per_bs_w;
  double total_w = 0.0;
};

// Radiated power ||A_g b_g||^2 per station and in total.
PowerReport transmit_power(const AnalogPrecoderSet& analog,
                           const std::vector<CVec>& digital);

}  // namespace cibeam

#endif  // CIBEAM_MODEL_HPP_
