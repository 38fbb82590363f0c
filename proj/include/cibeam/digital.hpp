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

#ifndef CIBEAM_DIGITAL_HPP_
#define CIBEAM_DIGITAL_HPP_

#include <vector>

#include "cibeam/convex.hpp"
#include "cibeam/types.hpp"

namespace cibeam {

// Per-station effective channels after the analog stage: per_bs[g] is a
// K x columns(g) matrix with row k equal to h_gk^T A_g (plain transpose).
struct EffectiveChannel {
  std::vector<CMat> per_bs;

  int num_users() const {
    return per_bs.empty() ? 0 : static_cast<int>(per_bs.front().rows());
  }
};

EffectiveChannel effective_channel(const ChannelSet& channels,
                                   const AnalogPrecoderSet& analog);

// Stacks the real and imaginary parts of the per-station digital vectors:
// x = [Re b_0; Im b_0; Re b_1; Im b_1; ...]. offset(g) locates block g.
struct BlockLayout {
  std::vector<int> offset;
  std::vector<int> cols;
  int dim = 0;

  static BlockLayout from_analog(const AnalogPrecoderSet& analog);
};

// Minimum-power digital precoding subject to every user's symbol-rotated
// sample lying in its constructive-interference region, with optional
// per-station power caps as quadratic constraints. Throws InfeasibleError
// when some user has an identically zero effective channel.
QcqpProblem build_ci_problem(const EffectiveChannel& effective,
                             const AnalogPrecoderSet& analog,
                             const SymbolVector& symbols,
                             const CiGeometry& geometry, const Vec& budgets_w);

// Full CI solve for one symbol slot. Infeasible instances raise
// InfeasibleError carrying the solver diagnostics; iteration exhaustion is
// reported through the returned status instead.
PrecodeSolution solve_digital_ci(const ChannelSet& channels,
                                 const AnalogPrecoderSet& analog,
                                 const SymbolVector& symbols,
                                 const CiGeometry& geometry, const Vec& budgets_w,
                                 const QcqpOptions& options = {});

// Channel-inverting baseline, split so the (symbol-independent) inverse is
// computed once per channel realization and applied per slot.
struct ZfDesign {
  std::vector<CMat> per_bs;  // columns(g) x K blocks of the pseudo-inverse
};

// Throws InfeasibleError when the stacked effective channel has rank < K.
ZfDesign design_zf(const EffectiveChannel& effective);

// Scales the unit-gain solution by the largest beta that keeps every
// station inside its power budget for this symbol vector.
PrecodeSolution apply_zf(const ZfDesign& design, const AnalogPrecoderSet& analog,
                         const SymbolVector& symbols, const Vec& budgets_w);

PrecodeSolution solve_digital_zf(const ChannelSet& channels,
                                 const AnalogPrecoderSet& analog,
                                 const SymbolVector& symbols, const Vec& budgets_w);

}  // namespace cibeam

#endif  // CIBEAM_DIGITAL_HPP_
