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

#ifndef CIBEAM_TYPES_HPP_
#define CIBEAM_TYPES_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cibeam {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// A problem instance that admits no solution: capacity shortfalls, empty
// constructive-interference regions, power budgets that cannot be met.
// Distinct from std::invalid_argument, which flags malformed inputs.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

enum class BsClass { Macro, Pico };

struct BsSpec {
  BsClass bs_class = BsClass::Macro;
  int antennas = 0;
  int rf_chains = 0;
  double power_budget_w = 0.0;
  Eigen::Vector2d position_km = Eigen::Vector2d::Zero();
};

struct UserSpec {
  Eigen::Vector2d position_km = Eigen::Vector2d::Zero();
};

// Full deployment description. Margins are per-user detection margins in
// received-amplitude units; noise_power_w is the receiver noise power in
// watts. ps_magnitude is the common phase-shifter magnitude; zero selects
// the per-base-station default 1/sqrt(antennas).
struct NetworkConfig {
  std::vector<BsSpec> bs_list;
  std::vector<UserSpec> users;
  double noise_power_w = 1e-9;
  int modulation_order = 4;
  std::vector<double> margins;
  double ps_magnitude = 0.0;
  double fairness_weight = 1.0;
  std::uint64_t seed = 1;
  // True when user entries carry meaningful positions; false when the user
  // list only fixes the count and positions are drawn per trial.
  bool users_placed = false;

  int num_bs() const { return static_cast<int>(bs_list.size()); }
  int num_users() const { return static_cast<int>(users.size()); }
  int total_rf_chains() const;
  double margin(int user) const;
  Vec margin_vector() const;
  Vec budget_vector() const;
  // Throws std::invalid_argument on any violated structural constraint.
  void validate() const;
};

// Flat indexing of RF chains across base stations: chain r belongs to
// bs_index[r] and is that station's local chain local_index[r]. Chains are
// numbered station-major in bs_list order.
struct RfChainMap {
  std::vector<int> bs_index;
  std::vector<int> local_index;
  std::vector<int> first_chain;  // per BS, index of its first global chain

  static RfChainMap from_config(const NetworkConfig& config);
  int total() const { return static_cast<int>(bs_index.size()); }
};

// Downlink channel vectors: per_bs[g] is antennas(g) x K with column k the
// channel from station g to user k, path loss folded into the amplitude.
struct ChannelSet {
  std::vector<CMat> per_bs;

  int num_bs() const { return static_cast<int>(per_bs.size()); }
  int num_users() const {
    return per_bs.empty() ? 0 : static_cast<int>(per_bs.front().cols());
  }
};

// One slot's worth of data symbols: indices[k] in [0, modulation_order) and
// values[k] the corresponding unit-circle constellation point.
struct SymbolVector {
  int modulation_order = 4;
  std::vector<int> indices;
  CVec values;
};

// Geometry of the constructive-interference region for M-PSK. theta is the
// half-angle pi/M; gamma[k] the per-user distance threshold along the symbol
// direction. For M == 4 tan_theta is pinned to exactly 1 so that generated
// constraint rows carry exact coefficients. M == 2 degenerates to the
// half-plane Re >= gamma, flagged by `halfplane` (tan_theta unused).
struct CiGeometry {
  double theta = 0.0;
  double tan_theta = 0.0;
  bool halfplane = false;
  Vec gamma;
};

// Per-station constant-modulus analog precoders. Column c of per_bs[g]
// serves user served_user[g][c]; stations may have fewer columns than RF
// chains when chains or codes are left unassigned.
struct AnalogPrecoderSet {
  std::vector<CMat> per_bs;
  std::vector<std::vector<int>> served_user;
  std::vector<double> magnitude;

  int num_bs() const { return static_cast<int>(per_bs.size()); }
  int total_columns() const;
  int columns(int g) const { return static_cast<int>(per_bs[g].cols()); }
};

enum class SolveStatus { Ok, Infeasible, MaxIterations };

// Result of one digital precoding solve (one symbol slot). `digital` holds
// the per-station baseband vectors actually transmitted; the zf_* fields are
// populated only by the zero-forcing path. ci_slack_per_user is empty when
// the margin geometry is not part of the solve (zero-forcing).
struct PrecodeSolution {
  SolveStatus status = SolveStatus::Ok;
  std::vector<CVec> digital;
  std::vector<CMat> zf_precoder;
  double zf_beta = 0.0;
  Vec per_bs_power_w;
  double total_power_w = 0.0;
  Vec ci_slack_per_user;
  int solver_iterations = 0;
};

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

}  // namespace cibeam

#endif  // CIBEAM_TYPES_HPP_
