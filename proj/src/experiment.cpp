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

#include "cibeam/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>

#include "cibeam/model.hpp"

namespace cibeam {
namespace {

NetworkConfig configure_point(const NetworkConfig& config, SchemeId scheme,
                              double value) {
  NetworkConfig cfg = config;
  if (is_margin_swept(scheme)) {
    cfg.margins = {value};
  } else {
    double total_w = dbm_to_watt(value);
    double configured = 0.0;
    for (const auto& bs : cfg.bs_list) configured += bs.power_budget_w;
    for (auto& bs : cfg.bs_list) bs.power_budget_w *= total_w / configured;
  }
  cfg.validate();
  return cfg;
}

}  // namespace

PointResult estimate_ser(const NetworkConfig& config, SchemeId scheme,
                         int point_index, double value, const SweepSpec& spec,
                         const DetectorHook& detector) {
  NetworkConfig cfg = configure_point(config, scheme, value);
  const int users = cfg.num_users();
  const int modulation = cfg.modulation_order;
  const bool zf = !is_margin_swept(scheme);

  PipelineOptions popt;
  popt.exact_assignment = spec.exact_assignment;
  // The zero-forcing family is budget-driven by definition, and the
  // uncoordinated baseline models stations that each honor their own
  // configured budget (a station that cannot meet its users' margins drops
  // them). Only the coordinated CI sweeps may run uncapped so the reported
  // power is the cost of the demanded margin.
  popt.enforce_budgets = (zf || scheme == SchemeId::UncoordinatedCi)
                             ? true
                             : spec.enforce_budgets_ci;
  popt.milp = spec.milp;
  popt.qcqp = spec.qcqp;

  CiGeometry geometry = make_ci_geometry(modulation, cfg.margin_vector());
  Vec ci_budgets = popt.enforce_budgets ? cfg.budget_vector() : Vec();

  long long errors = 0;
  long long attempted = 0;
  long long solved_slots = 0;
  long long total_slots = 0;
  double power_sum = 0.0;

  for (int trial = 0; trial < spec.trials; ++trial) {
    Rng rng(mix_seed({spec.master_seed, static_cast<std::uint64_t>(scheme),
                      static_cast<std::uint64_t>(point_index),
                      static_cast<std::uint64_t>(trial)}));
    std::vector<UserSpec> positions = place_users(cfg, spec.geometry, rng);
    ChannelSet channels = generate_channels(cfg, positions, rng, spec.geometry);

    std::optional<StagePrep> prep;
    std::optional<ZfDesign> zf_design;
    std::optional<UncoordPrep> uncoord;
    bool trial_ok = true;
    try {
      if (scheme == SchemeId::UncoordinatedCi) {
        uncoord = prepare_uncoordinated(cfg, channels, popt);
      } else {
        prep = prepare_stages(scheme, cfg, channels, popt);
        if (zf) zf_design = design_zf(effective_channel(channels, prep->analog));
      }
    } catch (const InfeasibleError&) {
      trial_ok = false;
    }

    for (int slot = 0; slot < spec.symbols_per_trial; ++slot) {
      ++total_slots;
      std::vector<int> indices(static_cast<std::size_t>(users));
      for (int k = 0; k < users; ++k) indices[static_cast<std::size_t>(k)] = rng.uniform_int(modulation);
      SymbolVector symbols = make_symbols(indices, modulation);

      bool solved = false;
      std::vector<char> served(static_cast<std::size_t>(users), 1);
      CVec y = CVec::Zero(users);
      double slot_power = 0.0;
      if (trial_ok) {
        try {
          if (scheme == SchemeId::UncoordinatedCi) {
            UncoordRun run = uncoordinated_digital(*uncoord, cfg, channels, symbols, popt);
            served = run.served;
            solved = (run.failed_stations == 0);
            slot_power = run.solution.total_power_w;
            y = received_nominal(channels, uncoord->analog, run.solution.digital);
          } else if (zf) {
            PrecodeSolution sol = apply_zf(*zf_design, prep->analog, symbols,
                                           cfg.budget_vector());
            solved = true;
            slot_power = sol.total_power_w;
            y = received_nominal(channels, prep->analog, sol.digital);
          } else {
            PrecodeSolution sol = solve_digital_ci(channels, prep->analog, symbols,
                                                   geometry, ci_budgets, popt.qcqp);
            solved = (sol.status == SolveStatus::Ok);
            slot_power = sol.total_power_w;
            if (solved) y = received_nominal(channels, prep->analog, sol.digital);
          }
        } catch (const InfeasibleError&) {
          solved = false;
        }
      }

      // Noise is drawn for every user in every slot so the stream layout
      // does not depend on solver outcomes.
      for (int k = 0; k < users; ++k) {
        Complex sample = y[k] + rng.complex_gaussian(cfg.noise_power_w);
        ++attempted;
        bool transmitting =
            scheme == SchemeId::UncoordinatedCi ? served[static_cast<std::size_t>(k)] != 0 : solved;
        if (!transmitting) {
          ++errors;
          continue;
        }
        int detected = detector ? detector(sample, modulation)
                                : detect_psk(sample, modulation);
        if (detected != indices[static_cast<std::size_t>(k)]) ++errors;
      }
      if (solved) {
        power_sum += slot_power;
        ++solved_slots;
      }
    }
  }

  PointResult out;
  out.scheme = scheme;
  out.sweep_var = zf ? "budget_dbm" : "margin";
  out.sweep_value = value;
  double margin = zf ? cfg.margin(0) : value;
  out.tnr_db = 10.0 * std::log10(margin * margin / cfg.noise_power_w);
  out.mean_power_w = solved_slots > 0 ? power_sum / static_cast<double>(solved_slots) : 0.0;
  out.ser = attempted > 0 ? static_cast<double>(errors) / static_cast<double>(attempted) : 0.0;
  out.ser_stderr = attempted > 0
                       ? std::sqrt(out.ser * (1.0 - out.ser) / static_cast<double>(attempted))
                       : 0.0;
  out.feasibility_rate =
      total_slots > 0 ? static_cast<double>(solved_slots) / static_cast<double>(total_slots) : 0.0;
  out.symbol_errors = errors;
  out.symbols_attempted = attempted;
  out.trials = spec.trials;
  out.symbols_per_trial = spec.symbols_per_trial;
  out.seed = spec.master_seed;
  return out;
}

std::vector<PointResult> run_sweep(const NetworkConfig& config, const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("run_sweep: empty grid");
  if (spec.schemes.empty()) throw std::invalid_argument("run_sweep: no schemes");
  if (spec.trials < 1 || spec.symbols_per_trial < 1)
    throw std::invalid_argument("run_sweep: trials and symbols must be positive");
  std::vector<PointResult> rows;
  rows.reserve(spec.schemes.size() * spec.grid.size());
  for (SchemeId scheme : spec.schemes)
    for (std::size_t p = 0; p < spec.grid.size(); ++p)
      rows.push_back(
          estimate_ser(config, scheme, static_cast<int>(p), spec.grid[p], spec));
  return rows;
}

std::string to_csv(const std::vector<PointResult>& rows) {
  std::string out =
      "scheme,sweep_var,sweep_value,tnr_db,mean_power_dbm,ser,ser_stderr,"
      "feasibility_rate,trials,symbols_per_trial,seed\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const auto& row : rows) {
    out += scheme_name(row.scheme);
    out += ',' + row.sweep_var;
    out += ',' + num(row.sweep_value);
    out += ',' + num(row.tnr_db);
    out += ',' + num(row.mean_power_w > 0.0 ? watt_to_dbm(row.mean_power_w)
                                            : -std::numeric_limits<double>::infinity());
    out += ',' + num(row.ser);
    out += ',' + num(row.ser_stderr);
    out += ',' + num(row.feasibility_rate);
    out += ',' + std::to_string(row.trials);
    out += ',' + std::to_string(row.symbols_per_trial);
    out += ',' + std::to_string(row.seed);
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<PointResult>& rows) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("write_csv: cannot open " + path);
  std::string body = to_csv(rows);
  file.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!file) throw std::runtime_error("write_csv: write failed for " + path);
}

OverheadReport backhaul_overhead(const NetworkConfig& config, long long delta,
                                 SchemeId scheme) {
  if (delta < 1) throw std::domain_error("backhaul_overhead: delta must be >= 1");
  OverheadReport report;
  report.scheme = scheme;
  report.delta = delta;
  long long chains_total = 0;
  for (const auto& bs : config.bs_list) {
    report.analog_once += static_cast<long long>(bs.antennas) * bs.rf_chains;
    chains_total += bs.rf_chains;
  }
  long long users = config.num_users();
  if (scheme == SchemeId::ZfContinuous || scheme == SchemeId::ZfCodebook) {
    report.digital_per_block = chains_total * users;
    report.digital_per_slot = static_cast<long long>(config.num_bs()) * users;
  } else {
    report.digital_per_block = 0;
    report.digital_per_slot = chains_total;
  }
  report.total = report.analog_once + report.digital_per_block +
                 delta * report.digital_per_slot;
  return report;
}

}  // namespace cibeam
