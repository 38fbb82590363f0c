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

#ifndef CIBEAM_CHANNEL_HPP_
#define CIBEAM_CHANNEL_HPP_

#include <iosfwd>
#include <vector>

#include "cibeam/rng.hpp"
#include "cibeam/types.hpp"

namespace cibeam {

// Drop geometry: users are drawn uniformly on a disc of cell_radius_km
// around the first macro station (the origin when there is none), rejecting
// draws closer than min_bs_user_distance_km to any station.
struct GeometrySpec {
  double cell_radius_km = 0.5;
  double min_bs_user_distance_km = 0.01;
  int max_placement_retries = 10000;
};

// Distance-dependent loss in dB for the two station classes, distance in km.
// Throws std::domain_error for non-positive distances.
double path_loss_db(BsClass bs_class, double distance_km);

// Draws one position per configured user. Each accepted position consumes
// two uniforms (radius, angle); rejected draws consume the same and retry.
// Throws std::invalid_argument when the geometry leaves no room to place.
std::vector<UserSpec> place_users(const NetworkConfig& config,
                                  const GeometrySpec& geometry, Rng& rng);

// Rayleigh-faded channels with path loss folded into the amplitude:
// h[n] = 10^(-PL/20) * w[n], w[n] circularly symmetric unit Gaussian.
// Draw order is station-major, then user, then antenna. Station-to-user
// distances are clamped below at geometry.min_bs_user_distance_km.
ChannelSet generate_channels(const NetworkConfig& config,
                             const std::vector<UserSpec>& users, Rng& rng,
                             const GeometrySpec& geometry = {});

// Plain-text serialization, one line per (station, user) pair:
//   g k re_0 im_0 re_1 im_1 ...
// Values are written with 17 significant digits, so a round trip is
// bit-exact. load_channels validates that the listing is rectangular.
void dump_channels(const ChannelSet& channels, std::ostream& out);
ChannelSet load_channels(std::istream& in);

}  // namespace cibeam

#endif  // CIBEAM_CHANNEL_HPP_
