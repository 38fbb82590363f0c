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

#include "cibeam/types.hpp"

namespace cibeam {

int NetworkConfig::total_rf_chains() const {
  int total = 0;
  for (const auto& bs : bs_list) total += bs.rf_chains;
  return total;
}

double NetworkConfig::margin(int user) const {
  if (margins.size() == 1) return margins.front();
  return margins.at(static_cast<std::size_t>(user));
}

Vec NetworkConfig::margin_vector() const {
  Vec out(num_users());
  for (int k = 0; k < num_users(); ++k) out[k] = margin(k);
  return out;
}

Vec NetworkConfig::budget_vector() const {
  Vec out(num_bs());
  for (int g = 0; g < num_bs(); ++g) out[g] = bs_list[g].power_budget_w;
  return out;
}

void NetworkConfig::validate() const {
  if (bs_list.empty()) throw std::invalid_argument("config: no base stations");
  if (users.empty()) throw std::invalid_argument("config: no users");
  for (int g = 0; g < num_bs(); ++g) {
    const auto& bs = bs_list[g];
    if (bs.antennas < 1)
      throw std::invalid_argument("config: station " + std::to_string(g) +
                                  " has no antennas");
    if (bs.rf_chains < 1 || bs.rf_chains > bs.antennas)
      throw std::invalid_argument("config: station " + std::to_string(g) +
                                  " needs 1 <= rf_chains <= antennas");
    if (!(bs.power_budget_w > 0.0))
      throw std::invalid_argument("config: station " + std::to_string(g) +
                                  " needs a positive power budget");
  }
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("config: noise power must be positive");
  int m = modulation_order;
  if (m < 2 || (m & (m - 1)) != 0)
    throw std::invalid_argument("config: modulation order must be a power of two >= 2");
  if (margins.empty())
    throw std::invalid_argument("config: at least one margin required");
  if (margins.size() != 1 && margins.size() != users.size())
    throw std::invalid_argument("config: margins must be one value or one per user");
  for (double gm : margins)
    if (!(gm >= 0.0) || !std::isfinite(gm))
      throw std::invalid_argument("config: margins must be finite and >= 0");
  if (ps_magnitude < 0.0 || !std::isfinite(ps_magnitude))
    throw std::invalid_argument("config: ps_magnitude must be >= 0 (0 = auto)");
  if (!(fairness_weight >= 0.0))
    throw std::invalid_argument("config: fairness weight must be >= 0");
}

RfChainMap RfChainMap::from_config(const NetworkConfig& config) {
  RfChainMap map;
  map.first_chain.reserve(config.bs_list.size());
  for (int g = 0; g < config.num_bs(); ++g) {
    map.first_chain.push_back(map.total());
    for (int r = 0; r < config.bs_list[g].rf_chains; ++r) {
      map.bs_index.push_back(g);
      map.local_index.push_back(r);
    }
  }
  return map;
}

int AnalogPrecoderSet::total_columns() const {
  int total = 0;
  for (const auto& a : per_bs) total += static_cast<int>(a.cols());
  return total;
}

}  // namespace cibeam
