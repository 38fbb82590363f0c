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

#include "cibeam/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cibeam/model.hpp"

namespace cibeam {
namespace {

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(std::string(name) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  }
}

Vec subset(const Vec& full, const std::vector<int>& indices) {
  Vec out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) out[static_cast<Eigen::Index>(i)] = full[indices[i]];
  return out;
}

}  // namespace

SchemeId parse_scheme(const std::string& name) {
  if (name == "ci-continuous") return SchemeId::CiContinuous;
  if (name == "ci-codebook") return SchemeId::CiCodebook;
  if (name == "zf-continuous") return SchemeId::ZfContinuous;
  if (name == "zf-codebook") return SchemeId::ZfCodebook;
  if (name == "uncoordinated-ci") return SchemeId::UncoordinatedCi;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string scheme_name(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::CiContinuous: return "ci-continuous";
    case SchemeId::CiCodebook: return "ci-codebook";
    case SchemeId::ZfContinuous: return "zf-continuous";
    case SchemeId::ZfCodebook: return "zf-codebook";
    case SchemeId::UncoordinatedCi: return "uncoordinated-ci";
  }
  throw std::invalid_argument("unknown scheme id");
}

bool is_margin_swept(SchemeId scheme) {
  return scheme == SchemeId::CiContinuous || scheme == SchemeId::CiCodebook ||
         scheme == SchemeId::UncoordinatedCi;
}

bool uses_codebook(SchemeId scheme) {
  return scheme == SchemeId::CiCodebook || scheme == SchemeId::ZfCodebook;
}

StagePrep prepare_stages(SchemeId scheme, const NetworkConfig& config,
                         const ChannelSet& channels, const PipelineOptions& options) {
  if (scheme == SchemeId::UncoordinatedCi)
    throw std::invalid_argument("prepare_stages: uncoordinated scheme has its own pipeline");
  config.validate();
  std::vector<double> magnitudes = resolve_ps_magnitudes(config);
  StagePrep prep;
  if (uses_codebook(scheme)) {
    Codebook book = build_dft_codebook(config, magnitudes);
    Mat gains = gain_matrix_codebook(channels, book.per_bs);
    std::vector<int> caps;
    for (const auto& bs : config.bs_list) caps.push_back(bs.rf_chains);
    prep.assignment = stage("assignment stage", [&] {
      return options.exact_assignment
                 ? solve_code_assignment(gains, book.row_owner, caps,
                                         config.fairness_weight, options.milp)
                 : heuristic_assignment(gains, book.row_owner, caps,
                                        config.fairness_weight);
    });
    prep.analog = stage("analog stage", [&] {
      return build_codebook_analog(book, prep.assignment, config);
    });
  } else {
    RfChainMap chains = RfChainMap::from_config(config);
    Mat gains = gain_matrix_continuous(channels, chains);
    prep.assignment = stage("assignment stage", [&] {
      return options.exact_assignment
                 ? solve_rf_assignment(gains, config.fairness_weight, options.milp)
                 : heuristic_assignment(gains, config.fairness_weight);
    });
    prep.analog = stage("analog stage", [&] {
      return build_continuous_analog(channels, prep.assignment, chains, magnitudes);
    });
  }
  return prep;
}

SchemeRun run_coordinated(SchemeId scheme, const NetworkConfig& config,
                          const ChannelSet& channels, const SymbolVector& symbols,
                          const PipelineOptions& options) {
  SchemeRun run;
  run.prep = prepare_stages(scheme, config, channels, options);
  run.solution = stage("digital stage", [&] {
    if (scheme == SchemeId::ZfContinuous || scheme == SchemeId::ZfCodebook)
      return solve_digital_zf(channels, run.prep.analog, symbols,
                              config.budget_vector());
    CiGeometry geometry =
        make_ci_geometry(config.modulation_order, config.margin_vector());
    Vec budgets = options.enforce_budgets ? config.budget_vector() : Vec();
    return solve_digital_ci(channels, run.prep.analog, symbols, geometry, budgets,
                            options.qcqp);
  });
  return run;
}

std::vector<int> associate_users(const NetworkConfig& config,
                                 const ChannelSet& channels) {
  const int users = channels.num_users();
  const int num_bs = channels.num_bs();
  if (config.total_rf_chains() < users)
    throw InfeasibleError("association: " + std::to_string(config.total_rf_chains()) +
                          " chains cannot serve " + std::to_string(users) + " users");
  std::vector<int> load(static_cast<std::size_t>(num_bs), 0);
  std::vector<int> assoc(static_cast<std::size_t>(users), -1);
  for (int k = 0; k < users; ++k) {
    int best = -1;
    double best_energy = -1.0;
    for (int g = 0; g < num_bs; ++g) {
      if (load[static_cast<std::size_t>(g)] >=
          config.bs_list[static_cast<std::size_t>(g)].rf_chains)
        continue;
      double energy = channels.per_bs[static_cast<std::size_t>(g)].col(k).squaredNorm();
      if (energy > best_energy) {
        best_energy = energy;
        best = g;
      }
    }
    if (best < 0)
      throw InfeasibleError("association: no station with spare capacity for user " +
                            std::to_string(k));
    assoc[static_cast<std::size_t>(k)] = best;
    ++load[static_cast<std::size_t>(best)];
  }
  return assoc;
}

UncoordPrep prepare_uncoordinated(const NetworkConfig& config,
                                  const ChannelSet& channels,
                                  const PipelineOptions& options) {
  config.validate();
  const int num_bs = config.num_bs();
  UncoordPrep prep;
  prep.association = associate_users(config, channels);
  prep.bs_users.resize(static_cast<std::size_t>(num_bs));
  for (int k = 0; k < channels.num_users(); ++k)
    prep.bs_users[static_cast<std::size_t>(prep.association[static_cast<std::size_t>(k)])]
        .push_back(k);

  std::vector<double> magnitudes = resolve_ps_magnitudes(config);
  prep.per_bs_assignment.resize(static_cast<std::size_t>(num_bs));
  prep.analog.per_bs.resize(static_cast<std::size_t>(num_bs));
  prep.analog.served_user.resize(static_cast<std::size_t>(num_bs));
  prep.analog.magnitude = magnitudes;

  for (int g = 0; g < num_bs; ++g) {
    const auto& local_users = prep.bs_users[static_cast<std::size_t>(g)];
    const CMat& h = channels.per_bs[static_cast<std::size_t>(g)];
    if (local_users.empty()) {
      prep.analog.per_bs[static_cast<std::size_t>(g)] = CMat(h.rows(), 0);
      continue;
    }
    const int chains = config.bs_list[static_cast<std::size_t>(g)].rf_chains;
    Mat gains(chains, static_cast<Eigen::Index>(local_users.size()));
    for (int r = 0; r < chains; ++r)
      for (std::size_t u = 0; u < local_users.size(); ++u)
        gains(r, static_cast<Eigen::Index>(u)) = h.col(local_users[u]).squaredNorm();
    AssignmentResult asg = stage("assignment stage", [&] {
      return options.exact_assignment
                 ? solve_rf_assignment(gains, config.fairness_weight, options.milp)
                 : heuristic_assignment(gains, config.fairness_weight);
    });

    std::vector<int> col_users;
    for (int r = 0; r < chains; ++r)
      for (std::size_t u = 0; u < local_users.size(); ++u)
        if (asg.alpha(r, static_cast<Eigen::Index>(u)) != 0.0)
          col_users.push_back(local_users[u]);
    CMat precoder(h.rows(), static_cast<Eigen::Index>(col_users.size()));
    double a = magnitudes[static_cast<std::size_t>(g)];
    for (std::size_t c = 0; c < col_users.size(); ++c)
      for (int n = 0; n < h.rows(); ++n)
        precoder(n, static_cast<Eigen::Index>(c)) =
            std::polar(a, -std::arg(h(n, col_users[c])));
    prep.per_bs_assignment[static_cast<std::size_t>(g)] = std::move(asg);
    prep.analog.per_bs[static_cast<std::size_t>(g)] = std::move(precoder);
    prep.analog.served_user[static_cast<std::size_t>(g)] = std::move(col_users);
  }
  return prep;
}

UncoordRun uncoordinated_digital(const UncoordPrep& prep, const NetworkConfig& config,
                                 const ChannelSet& channels,
                                 const SymbolVector& symbols,
                                 const PipelineOptions& options) {
  const int num_bs = config.num_bs();
  const int users = channels.num_users();
  CiGeometry geometry =
      make_ci_geometry(config.modulation_order, config.margin_vector());

  UncoordRun run;
  run.served.assign(static_cast<std::size_t>(users), 0);
  run.solution.status = SolveStatus::Ok;
  run.solution.digital.resize(static_cast<std::size_t>(num_bs));
  run.solution.ci_slack_per_user =
      Vec::Constant(users, std::numeric_limits<double>::quiet_NaN());

  for (int g = 0; g < num_bs; ++g) {
    const auto& local_users = prep.bs_users[static_cast<std::size_t>(g)];
    const CMat& analog_g = prep.analog.per_bs[static_cast<std::size_t>(g)];
    run.solution.digital[static_cast<std::size_t>(g)] = CVec::Zero(analog_g.cols());
    if (local_users.empty()) continue;

    // Single-station view: only this station's channels to its own users.
    ChannelSet local_channels;
    CMat h_local(analog_g.rows(), static_cast<Eigen::Index>(local_users.size()));
    for (std::size_t u = 0; u < local_users.size(); ++u)
      h_local.col(static_cast<Eigen::Index>(u)) =
          channels.per_bs[static_cast<std::size_t>(g)].col(local_users[u]);
    local_channels.per_bs.push_back(std::move(h_local));

    AnalogPrecoderSet local_analog;
    local_analog.per_bs.push_back(analog_g);
    std::vector<int> local_cols(prep.analog.served_user[static_cast<std::size_t>(g)].size());
    for (std::size_t c = 0; c < local_cols.size(); ++c) {
      int global_user = prep.analog.served_user[static_cast<std::size_t>(g)][c];
      local_cols[c] = static_cast<int>(
          std::find(local_users.begin(), local_users.end(), global_user) -
          local_users.begin());
    }
    local_analog.served_user.push_back(local_cols);
    local_analog.magnitude.push_back(prep.analog.magnitude[static_cast<std::size_t>(g)]);

    SymbolVector local_symbols;
    local_symbols.modulation_order = symbols.modulation_order;
    local_symbols.values.resize(static_cast<Eigen::Index>(local_users.size()));
    for (std::size_t u = 0; u < local_users.size(); ++u) {
      local_symbols.indices.push_back(symbols.indices[static_cast<std::size_t>(local_users[u])]);
      local_symbols.values[static_cast<Eigen::Index>(u)] = symbols.values[local_users[u]];
    }

    CiGeometry local_geometry = geometry;
    local_geometry.gamma = subset(geometry.gamma, local_users);
    Vec local_budget;
    if (options.enforce_budgets) {
      local_budget.resize(1);
      local_budget[0] = config.bs_list[static_cast<std::size_t>(g)].power_budget_w;
    }

    try {
      PrecodeSolution local = solve_digital_ci(local_channels, local_analog,
                                               local_symbols, local_geometry,
                                               local_budget, options.qcqp);
      if (local.status != SolveStatus::Ok) throw InfeasibleError("solver did not converge");
      run.solution.digital[static_cast<std::size_t>(g)] = local.digital.front();
      for (std::size_t u = 0; u < local_users.size(); ++u) {
        run.served[static_cast<std::size_t>(local_users[u])] = 1;
        run.solution.ci_slack_per_user[local_users[u]] =
            local.ci_slack_per_user[static_cast<Eigen::Index>(u)];
      }
    } catch (const InfeasibleError&) {
      // The station stays silent this slot; its users are erased.
      ++run.failed_stations;
    }
  }

  PowerReport power = transmit_power(prep.analog, run.solution.digital);
  run.solution.per_bs_power_w = power.per_bs_w;
  run.solution.total_power_w = power.total_w;
  return run;
}

UncoordRun run_uncoordinated(const NetworkConfig& config, const ChannelSet& channels,
                             const SymbolVector& symbols,
                             const PipelineOptions& options) {
  UncoordPrep prep = prepare_uncoordinated(config, channels, options);
  return uncoordinated_digital(prep, config, channels, symbols, options);
}

}  // namespace cibeam
