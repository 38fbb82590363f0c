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

#include "cibeam/channel.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace cibeam {
namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double distance_km(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a - b).norm();
}

}  // namespace

double path_loss_db(BsClass bs_class, double distance_km) {
  if (!(distance_km > 0.0))
    throw std::domain_error("path_loss_db: distance must be positive");
  double lg = std::log10(distance_km);
  if (bs_class == BsClass::Macro) return 128.1 + 37.6 * lg;
  return 140.7 + 36.7 * lg;
}

std::vector<UserSpec> place_users(const NetworkConfig& config,
                                  const GeometrySpec& geometry, Rng& rng) {
  if (!(geometry.cell_radius_km > 0.0))
    throw std::invalid_argument("place_users: cell radius must be positive");
  if (geometry.min_bs_user_distance_km >= geometry.cell_radius_km)
    throw std::invalid_argument(
        "place_users: minimum station distance leaves no placement area");

  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  for (const auto& bs : config.bs_list) {
    if (bs.bs_class == BsClass::Macro) {
      center = bs.position_km;
      break;
    }
  }

  std::vector<UserSpec> users(config.users.size());
  for (auto& user : users) {
    bool placed = false;
    for (int attempt = 0; attempt < geometry.max_placement_retries; ++attempt) {
      // Uniform on the disc: radius via square-root transform, then angle.
      double r = geometry.cell_radius_km * std::sqrt(rng.uniform());
      double phi = kTwoPi * rng.uniform();
      Eigen::Vector2d pos = center + Eigen::Vector2d(r * std::cos(phi), r * std::sin(phi));
      bool clear = true;
      for (const auto& bs : config.bs_list) {
        if (distance_km(pos, bs.position_km) < geometry.min_bs_user_distance_km) {
          clear = false;
          break;
        }
      }
      if (clear) {
        user.position_km = pos;
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::invalid_argument("place_users: no admissible position found");
  }
  return users;
}

ChannelSet generate_channels(const NetworkConfig& config,
                             const std::vector<UserSpec>& users, Rng& rng,
                             const GeometrySpec& geometry) {
  ChannelSet set;
  set.per_bs.reserve(config.bs_list.size());
  for (const auto& bs : config.bs_list) {
    CMat h(bs.antennas, static_cast<Eigen::Index>(users.size()));
    for (std::size_t k = 0; k < users.size(); ++k) {
      double d = std::max(distance_km(bs.position_km, users[k].position_km),
                          geometry.min_bs_user_distance_km);
      double amplitude = std::pow(10.0, -path_loss_db(bs.bs_class, d) / 20.0);
      for (int n = 0; n < bs.antennas; ++n)
        h(n, static_cast<Eigen::Index>(k)) = amplitude * rng.complex_gaussian(1.0);
    }
    set.per_bs.push_back(std::move(h));
  }
  return set;
}

void dump_channels(const ChannelSet& channels, std::ostream& out) {
  char buf[32];
  for (int g = 0; g < channels.num_bs(); ++g) {
    const CMat& h = channels.per_bs[g];
    for (int k = 0; k < h.cols(); ++k) {
      out << g << ' ' << k;
      for (int n = 0; n < h.rows(); ++n) {
        std::snprintf(buf, sizeof(buf), "%.17g", h(n, k).real());
        out << ' ' << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", h(n, k).imag());
        out << ' ' << buf;
      }
      out << '\n';
    }
  }
}

ChannelSet load_channels(std::istream& in) {
  // (station, user) -> antenna samples; tolerate any line order but demand
  // a rectangular listing at the end.
  std::map<std::pair<int, int>, std::vector<Complex>> entries;
  int max_g = -1;
  int max_k = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int g = 0, k = 0;
    if (!(ls >> g >> k) || g < 0 || k < 0)
      throw std::invalid_argument("load_channels: bad indices at line " +
                                  std::to_string(lineno));
    std::vector<Complex> h;
    double re = 0.0, im = 0.0;
    while (ls >> re >> im) h.emplace_back(re, im);
    if (h.empty() || !ls.eof())
      throw std::invalid_argument("load_channels: bad samples at line " +
                                  std::to_string(lineno));
    if (!entries.emplace(std::make_pair(g, k), std::move(h)).second)
      throw std::invalid_argument("load_channels: duplicate entry at line " +
                                  std::to_string(lineno));
    max_g = std::max(max_g, g);
    max_k = std::max(max_k, k);
  }
  if (max_g < 0) throw std::invalid_argument("load_channels: empty input");

  ChannelSet set;
  set.per_bs.resize(static_cast<std::size_t>(max_g) + 1);
  for (int g = 0; g <= max_g; ++g) {
    auto first = entries.find({g, 0});
    if (first == entries.end())
      throw std::invalid_argument("load_channels: missing entry for station " +
                                  std::to_string(g) + ", user 0");
    int antennas = static_cast<int>(first->second.size());
    CMat h(antennas, max_k + 1);
    for (int k = 0; k <= max_k; ++k) {
      auto it = entries.find({g, k});
      if (it == entries.end())
        throw std::invalid_argument("load_channels: missing entry for station " +
                                    std::to_string(g) + ", user " + std::to_string(k));
      if (static_cast<int>(it->second.size()) != antennas)
        throw std::invalid_argument("load_channels: ragged antenna count at station " +
                                    std::to_string(g));
      for (int n = 0; n < antennas; ++n) h(n, k) = it->second[static_cast<std::size_t>(n)];
    }
    set.per_bs[static_cast<std::size_t>(g)] = std::move(h);
  }
  return set;
}

}  // namespace cibeam
