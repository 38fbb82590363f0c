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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cibeam/analog.hpp"
#include "cibeam/channel.hpp"
#include "cibeam/config_io.hpp"
#include "cibeam/experiment.hpp"
#include "cibeam/milp.hpp"
#include "cibeam/model.hpp"
#include "cibeam/schemes.hpp"

namespace {

using namespace cibeam;

struct CommonArgs {
  std::string config_path;
  bool full_dims = false;
  std::uint64_t seed = 0;
  bool have_seed = false;
  bool heuristic = false;
};

NetworkConfig load_config(const CommonArgs& args) {
  NetworkConfig cfg;
  if (!args.config_path.empty()) cfg = parse_config_file(args.config_path);
  else if (args.full_dims) cfg = full_dims_config();
  else cfg = default_desk_config();
  if (args.have_seed) cfg.seed = args.seed;
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file (key = value)");
  cmd->add_flag("--full-dims", args.full_dims,
                "use the full-dimension built-in configuration");
  cmd->add_option("--seed", args.seed, "override the configured seed")
      ->each([&args](const std::string&) { args.have_seed = true; });
  cmd->add_flag("--heuristic-assignment", args.heuristic,
                "use the greedy assignment instead of the exact solver");
}

// Draws positions and channels from the config seed unless the config
// pinned explicit user positions.
ChannelSet realize_channels(const NetworkConfig& cfg, Rng& rng,
                            std::vector<UserSpec>& positions) {
  GeometrySpec geometry;
  positions = cfg.users_placed ? cfg.users : place_users(cfg, geometry, rng);
  return generate_channels(cfg, positions, rng, geometry);
}

std::vector<std::string> split_scheme_list(const std::string& list) {
  std::vector<std::string> names;
  std::istringstream is(list);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) names.push_back(tok);
  }
  if (names.empty()) names.push_back("ci-continuous");
  return names;
}

int cmd_simulate(const CommonArgs& common, const std::string& scheme_list,
                 const std::string& sweep_list, int trials, int symbols,
                 bool enforce_budgets, const std::string& out_path) {
  NetworkConfig cfg = load_config(common);
  SweepSpec spec;
  for (const auto& name : split_scheme_list(scheme_list))
    spec.schemes.push_back(parse_scheme(name));
  {
    std::istringstream is(sweep_list);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) continue;
      spec.grid.push_back(std::stod(tok));
    }
  }
  if (spec.grid.empty()) {
    // Default sweep: the configured margin (CI) or total budget (ZF) alone.
    double total_w = 0.0;
    for (const auto& bs : cfg.bs_list) total_w += bs.power_budget_w;
    bool any_zf = false;
    for (SchemeId s : spec.schemes) any_zf |= !is_margin_swept(s);
    spec.grid.push_back(any_zf ? watt_to_dbm(total_w) : cfg.margin(0));
  }
  spec.trials = trials;
  spec.symbols_per_trial = symbols;
  spec.master_seed = cfg.seed;
  spec.enforce_budgets_ci = enforce_budgets;
  spec.exact_assignment = !common.heuristic;

  std::vector<PointResult> rows = run_sweep(cfg, spec);
  if (out_path.empty() || out_path == "-") {
    std::cout << to_csv(rows);
  } else {
    write_csv(out_path, rows);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  }
  return 0;
}

int cmd_assign(const CommonArgs& common, const std::string& mode) {
  NetworkConfig cfg = load_config(common);
  Rng rng(cfg.seed);
  std::vector<UserSpec> positions;
  ChannelSet channels = realize_channels(cfg, rng, positions);

  AssignmentResult result;
  if (mode == "codebook") {
    Codebook book = build_dft_codebook(cfg, resolve_ps_magnitudes(cfg));
    Mat gains = gain_matrix_codebook(channels, book.per_bs);
    std::vector<int> caps;
    for (const auto& bs : cfg.bs_list) caps.push_back(bs.rf_chains);
    result = common.heuristic
                 ? heuristic_assignment(gains, book.row_owner, caps, cfg.fairness_weight)
                 : solve_code_assignment(gains, book.row_owner, caps, cfg.fairness_weight);
  } else if (mode == "continuous") {
    RfChainMap chains = RfChainMap::from_config(cfg);
    Mat gains = gain_matrix_continuous(channels, chains);
    result = common.heuristic ? heuristic_assignment(gains, cfg.fairness_weight)
                              : solve_rf_assignment(gains, cfg.fairness_weight);
  } else {
    throw CLI::ValidationError("--mode", "must be continuous or codebook");
  }

  std::printf("rows: %ld  users: %ld\n", static_cast<long>(result.alpha.rows()),
              static_cast<long>(result.alpha.cols()));
  std::printf("objective: %.12g\n", result.objective);
  std::printf("min user gain: %.12g\n", result.min_user_gain);
  std::printf("solver: %s (%ld nodes)\n", result.exact ? "exact" : "heuristic",
              result.nodes);
  for (int r = 0; r < result.alpha.rows(); ++r)
    for (int k = 0; k < result.alpha.cols(); ++k)
      if (result.alpha(r, k) != 0.0) std::printf("row %d -> user %d\n", r, k);
  return 0;
}

int cmd_precode(const CommonArgs& common, const std::string& scheme_name_arg,
                const std::string& dump_channels_path) {
  NetworkConfig cfg = load_config(common);
  SchemeId scheme = parse_scheme(scheme_name_arg);
  Rng rng(cfg.seed);
  std::vector<UserSpec> positions;
  ChannelSet channels = realize_channels(cfg, rng, positions);
  if (!dump_channels_path.empty()) {
    std::ofstream dump(dump_channels_path);
    if (!dump) throw std::runtime_error("cannot open " + dump_channels_path);
    dump_channels(channels, dump);
  }

  std::vector<int> indices(static_cast<std::size_t>(cfg.num_users()));
  for (auto& m : indices) m = rng.uniform_int(cfg.modulation_order);
  SymbolVector symbols = make_symbols(indices, cfg.modulation_order);

  PipelineOptions popt;
  popt.exact_assignment = !common.heuristic;

  if (scheme == SchemeId::UncoordinatedCi) {
    UncoordRun run = run_uncoordinated(cfg, channels, symbols, popt);
    std::printf("failed stations: %d\n", run.failed_stations);
    std::printf("total power: %.12g W\n", run.solution.total_power_w);
    for (int k = 0; k < cfg.num_users(); ++k)
      std::printf("user %d: served=%d own-station slack=%.6g\n", k,
                  static_cast<int>(run.served[static_cast<std::size_t>(k)]),
                  run.solution.ci_slack_per_user[k]);
    return 0;
  }

  SchemeRun run = run_coordinated(scheme, cfg, channels, symbols, popt);
  if (run.solution.status != cibeam::SolveStatus::Ok) {
    std::fprintf(stderr, "solver did not converge on this instance\n");
    return 3;
  }
  std::printf("scheme: %s\n", scheme_name(scheme).c_str());
  std::printf("total power: %.12g W", run.solution.total_power_w);
  std::printf(" (per station:");
  for (int g = 0; g < run.solution.per_bs_power_w.size(); ++g)
    std::printf(" %.6g", run.solution.per_bs_power_w[g]);
  std::printf(")\n");
  if (run.solution.ci_slack_per_user.size() > 0) {
    std::printf("min CI slack: %.6g\n", run.solution.ci_slack_per_user.minCoeff());
    std::printf("solver iterations: %d\n", run.solution.solver_iterations);
  } else {
    std::printf("zf beta: %.12g\n", run.solution.zf_beta);
  }
  return 0;
}

int cmd_overhead(const CommonArgs& common, long long delta) {
  NetworkConfig cfg = load_config(common);
  for (SchemeId scheme : {SchemeId::CiContinuous, SchemeId::ZfContinuous}) {
    OverheadReport report = backhaul_overhead(cfg, delta, scheme);
    std::printf("%s: analog %lld, per-block digital %lld, per-slot digital %lld, total %lld\n",
                scheme_name(scheme).c_str(), report.analog_once,
                report.digital_per_block, report.digital_per_slot, report.total);
  }
  return 0;
}

int cmd_selftest(const CommonArgs& common) {
  NetworkConfig cfg = load_config(common);
  Rng rng(cfg.seed);
  std::vector<UserSpec> positions;
  ChannelSet channels = realize_channels(cfg, rng, positions);
  std::vector<int> indices(static_cast<std::size_t>(cfg.num_users()));
  for (auto& m : indices) m = rng.uniform_int(cfg.modulation_order);
  SymbolVector symbols = make_symbols(indices, cfg.modulation_order);

  PipelineOptions popt;
  popt.enforce_budgets = false;
  int failures = 0;
  for (SchemeId scheme : {SchemeId::CiContinuous, SchemeId::CiCodebook}) {
    SchemeRun run = run_coordinated(scheme, cfg, channels, symbols, popt);
    double min_slack = run.solution.ci_slack_per_user.minCoeff();
    bool ok = run.solution.status == SolveStatus::Ok && min_slack >= -1e-6;
    std::printf("%s: min slack %.3g, %s\n", scheme_name(scheme).c_str(), min_slack,
                ok ? "ok" : "FAILED");
    failures += ok ? 0 : 1;
  }
  for (SchemeId scheme : {SchemeId::ZfContinuous, SchemeId::ZfCodebook}) {
    SchemeRun run = run_coordinated(scheme, cfg, channels, symbols, popt);
    CVec y = received_nominal(channels, run.prep.analog, run.solution.digital);
    double worst = 0.0;
    for (int k = 0; k < y.size(); ++k)
      worst = std::max(worst,
                       std::abs(y[k] - run.solution.zf_beta * symbols.values[k]));
    bool ok = worst <= 1e-9 * std::max(1.0, run.solution.zf_beta);
    std::printf("%s: max |y - beta*s| = %.3g, %s\n", scheme_name(scheme).c_str(),
                worst, ok ? "ok" : "FAILED");
    failures += ok ? 0 : 1;
  }
  std::printf(failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordinated constructive-interference hybrid precoding simulator"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo SER/power sweep");
  std::string scheme_list = "ci-continuous";
  std::string sweep_list;
  int trials = 200;
  int symbols = 50;
  bool enforce_budgets = false;
  std::string out_path;
  add_common(simulate, common);
  simulate->add_option("--scheme", scheme_list, "comma-separated scheme list");
  simulate->add_option("--sweep", sweep_list,
                       "comma-separated margins (CI) or total budgets in dBm (ZF)");
  simulate->add_option("--trials", trials, "independent channel drops per point");
  simulate->add_option("--symbols", symbols, "symbol slots per trial");
  simulate->add_flag("--enforce-budgets", enforce_budgets,
                     "apply per-station power caps to the coordinated CI "
                     "schemes (the ZF and uncoordinated schemes are always "
                     "capped)");
  simulate->add_option("--out", out_path, "CSV output path ('-' for stdout)");

  auto* assign = app.add_subcommand("assign", "one-shot chain/code assignment");
  std::string mode = "continuous";
  add_common(assign, common);
  assign->add_option("--mode", mode, "continuous or codebook");

  auto* precode = app.add_subcommand("precode", "one-shot precoding solve");
  std::string precode_scheme = "ci-continuous";
  std::string dump_channels_path;
  add_common(precode, common);
  precode->add_option("--scheme", precode_scheme, "scheme to run");
  precode->add_option("--dump-channels", dump_channels_path,
                      "write the drawn channels as plain text");

  auto* overhead = app.add_subcommand("overhead", "backhaul coefficient counts");
  long long delta = 1;
  add_common(overhead, common);
  overhead->add_option("--delta", delta, "symbol slots per channel coherence block");

  auto* selftest = app.add_subcommand("selftest", "solve one slot and check invariants");
  add_common(selftest, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed())
      return cmd_simulate(common, scheme_list, sweep_list, trials, symbols,
                          enforce_budgets, out_path);
    if (assign->parsed()) return cmd_assign(common, mode);
    if (precode->parsed()) return cmd_precode(common, precode_scheme, dump_channels_path);
    if (overhead->parsed()) return cmd_overhead(common, delta);
    if (selftest->parsed()) return cmd_selftest(common);
  } catch (const cibeam::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
