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

#include "cibeam/analog.hpp"

#include <cmath>
#include <string>

#include "cibeam/model.hpp"

namespace cibeam {

std::vector<double> resolve_ps_magnitudes(const NetworkConfig& config) {
  std::vector<double> mags;
  mags.reserve(config.bs_list.size());
  for (const auto& bs : config.bs_list)
    mags.push_back(config.ps_magnitude > 0.0
                       ? config.ps_magnitude
                       : 1.0 / std::sqrt(static_cast<double>(bs.antennas)));
  return mags;
}

int Codebook::total_columns() const {
  int total = 0;
  for (const auto& cb : per_bs) total += static_cast<int>(cb.cols());
  return total;
}

Codebook build_dft_codebook(const NetworkConfig& config,
                            const std::vector<double>& magnitudes) {
  if (magnitudes.size() != config.bs_list.size())
    throw std::invalid_argument("build_dft_codebook: magnitude count mismatch");
  Codebook book;
  for (int g = 0; g < config.num_bs(); ++g) {
    int n_ant = config.bs_list[static_cast<std::size_t>(g)].antennas;
    double a = magnitudes[static_cast<std::size_t>(g)];
    CMat cb(n_ant, n_ant);
    for (int c = 0; c < n_ant; ++c) {
      for (int n = 0; n < n_ant; ++n) {
        // exp(-j*2*pi*n*c/N) via the exact constellation helper, so
        // quadrantal phases come out bit-exact.
        int t = static_cast<int>((static_cast<long>(n) * c) % n_ant);
        cb(n, c) = a * std::conj(psk_symbol(t, n_ant));
      }
      book.row_owner.push_back(g);
    }
    book.per_bs.push_back(std::move(cb));
  }
  return book;
}

AnalogPrecoderSet build_continuous_analog(const ChannelSet& channels,
                                          const AssignmentResult& assignment,
                                          const RfChainMap& chains,
                                          const std::vector<double>& magnitudes) {
  if (assignment.alpha.rows() != chains.total())
    throw std::invalid_argument("build_continuous_analog: assignment row count mismatch");
  if (magnitudes.size() != channels.per_bs.size())
    throw std::invalid_argument("build_continuous_analog: magnitude count mismatch");

  const int num_bs = channels.num_bs();
  AnalogPrecoderSet set;
  set.per_bs.resize(static_cast<std::size_t>(num_bs));
  set.served_user.resize(static_cast<std::size_t>(num_bs));
  set.magnitude = magnitudes;

  std::vector<std::vector<int>> bs_chains(static_cast<std::size_t>(num_bs));
  std::vector<std::vector<int>> bs_users(static_cast<std::size_t>(num_bs));
  for (int r = 0; r < chains.total(); ++r) {
    int user = -1;
    for (int k = 0; k < assignment.alpha.cols(); ++k)
      if (assignment.alpha(r, k) != 0.0) {
        user = k;
        break;
      }
    if (user < 0) continue;
    int g = chains.bs_index[static_cast<std::size_t>(r)];
    bs_chains[static_cast<std::size_t>(g)].push_back(r);
    bs_users[static_cast<std::size_t>(g)].push_back(user);
  }

  for (int g = 0; g < num_bs; ++g) {
    const CMat& h = channels.per_bs[static_cast<std::size_t>(g)];
    double a = magnitudes[static_cast<std::size_t>(g)];
    int cols = static_cast<int>(bs_chains[static_cast<std::size_t>(g)].size());
    CMat precoder(h.rows(), cols);
    for (int c = 0; c < cols; ++c) {
      int user = bs_users[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
      for (int n = 0; n < h.rows(); ++n)
        precoder(n, c) = std::polar(a, -std::arg(h(n, user)));
    }
    set.per_bs[static_cast<std::size_t>(g)] = std::move(precoder);
    set.served_user[static_cast<std::size_t>(g)] = bs_users[static_cast<std::size_t>(g)];
  }
  return set;
}

AnalogPrecoderSet build_codebook_analog(const Codebook& codebook,
                                        const AssignmentResult& assignment,
                                        const NetworkConfig& config) {
  if (assignment.alpha.rows() != codebook.total_columns())
    throw std::invalid_argument("build_codebook_analog: assignment row count mismatch");
  if (static_cast<int>(codebook.per_bs.size()) != config.num_bs())
    throw std::invalid_argument("build_codebook_analog: station count mismatch");

  const int num_bs = config.num_bs();
  AnalogPrecoderSet set;
  set.per_bs.resize(static_cast<std::size_t>(num_bs));
  set.served_user.resize(static_cast<std::size_t>(num_bs));
  set.magnitude.reserve(static_cast<std::size_t>(num_bs));

  int row = 0;
  for (int g = 0; g < num_bs; ++g) {
    const CMat& cb = codebook.per_bs[static_cast<std::size_t>(g)];
    std::vector<int> picked_cols;
    std::vector<int> picked_users;
    for (int c = 0; c < cb.cols(); ++c, ++row) {
      for (int k = 0; k < assignment.alpha.cols(); ++k)
        if (assignment.alpha(row, k) != 0.0) {
          picked_cols.push_back(c);
          picked_users.push_back(k);
          break;
        }
    }
    if (static_cast<int>(picked_cols.size()) >
        config.bs_list[static_cast<std::size_t>(g)].rf_chains)
      throw std::invalid_argument("build_codebook_analog: station " + std::to_string(g) +
                                  " assigned more codes than RF chains");
    CMat precoder(cb.rows(), static_cast<Eigen::Index>(picked_cols.size()));
    for (std::size_t c = 0; c < picked_cols.size(); ++c)
      precoder.col(static_cast<Eigen::Index>(c)) = cb.col(picked_cols[c]);
    set.per_bs[static_cast<std::size_t>(g)] = std::move(precoder);
    set.served_user[static_cast<std::size_t>(g)] = std::move(picked_users);
    set.magnitude.push_back(cb.size() > 0 ? std::abs(cb(0, 0)) : 0.0);
  }
  return set;
}

}  // namespace cibeam
