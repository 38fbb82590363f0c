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

#include "cibeam/config_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

namespace cibeam {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, sep)) parts.push_back(trim(part));
  return parts;
}

double parse_double(const std::string& s, const std::string& key) {
  std::size_t end = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &end);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number '" + s + "' for " + key);
  }
  if (end != s.size())
    throw std::invalid_argument("config: bad number '" + s + "' for " + key);
  return v;
}

long long parse_int(const std::string& s, const std::string& key) {
  std::size_t end = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &end);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer '" + s + "' for " + key);
  }
  if (end != s.size())
    throw std::invalid_argument("config: bad integer '" + s + "' for " + key);
  return v;
}

BsSpec parse_bs(const std::string& entry) {
  std::vector<std::string> f = split(entry, ',');
  if (f.size() != 6)
    throw std::invalid_argument(
        "config: bs_list entry needs class,antennas,rf_chains,power_budget_w,x_km,y_km");
  BsSpec bs;
  if (f[0] == "macro") bs.bs_class = BsClass::Macro;
  else if (f[0] == "pico") bs.bs_class = BsClass::Pico;
  else throw std::invalid_argument("config: station class must be macro or pico");
  bs.antennas = static_cast<int>(parse_int(f[1], "bs_list"));
  bs.rf_chains = static_cast<int>(parse_int(f[2], "bs_list"));
  bs.power_budget_w = parse_double(f[3], "bs_list");
  bs.position_km = {parse_double(f[4], "bs_list"), parse_double(f[5], "bs_list")};
  return bs;
}

}  // namespace

NetworkConfig default_desk_config() {
  NetworkConfig cfg;
  BsSpec macro;
  macro.bs_class = BsClass::Macro;
  macro.antennas = 16;
  macro.rf_chains = 8;
  macro.power_budget_w = dbm_to_watt(46.0);
  macro.position_km = {0.0, 0.0};
  BsSpec pico = macro;
  pico.bs_class = BsClass::Pico;
  pico.antennas = 8;
  pico.rf_chains = 4;
  pico.power_budget_w = dbm_to_watt(30.0);
  pico.position_km = {0.25, 0.0};
  BsSpec pico2 = pico;
  pico2.position_km = {-0.25, 0.0};
  cfg.bs_list = {macro, pico, pico2};
  cfg.users.assign(8, UserSpec{});
  cfg.noise_power_w = 1e-9;
  cfg.modulation_order = 4;
  cfg.margins = {1e-4};
  cfg.ps_magnitude = 0.0;
  cfg.fairness_weight = 1.0;
  cfg.seed = 1;
  return cfg;
}

NetworkConfig full_dims_config() {
  NetworkConfig cfg = default_desk_config();
  cfg.bs_list[0].antennas = 64;
  cfg.bs_list[0].rf_chains = 32;
  cfg.bs_list[1].antennas = 32;
  cfg.bs_list[1].rf_chains = 16;
  cfg.bs_list[2].antennas = 32;
  cfg.bs_list[2].rf_chains = 16;
  cfg.users.assign(64, UserSpec{});
  return cfg;
}

NetworkConfig parse_config_text(const std::string& text) {
  NetworkConfig cfg = default_desk_config();
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (value.empty())
      throw std::invalid_argument("config: empty value for " + key);

    if (key == "bs_list") {
      cfg.bs_list.clear();
      for (const std::string& entry : split(value, ';'))
        if (!entry.empty()) cfg.bs_list.push_back(parse_bs(entry));
    } else if (key == "users") {
      cfg.users.clear();
      if (value.find(',') == std::string::npos) {
        long long count = parse_int(value, key);
        if (count < 1) throw std::invalid_argument("config: users count must be >= 1");
        cfg.users.assign(static_cast<std::size_t>(count), UserSpec{});
        cfg.users_placed = false;
      } else {
        for (const std::string& entry : split(value, ';')) {
          if (entry.empty()) continue;
          std::vector<std::string> xy = split(entry, ',');
          if (xy.size() != 2)
            throw std::invalid_argument("config: user entry needs x_km,y_km");
          UserSpec user;
          user.position_km = {parse_double(xy[0], key), parse_double(xy[1], key)};
          cfg.users.push_back(user);
        }
        cfg.users_placed = true;
      }
    } else if (key == "noise_power") {
      cfg.noise_power_w = parse_double(value, key);
    } else if (key == "modulation_order") {
      cfg.modulation_order = static_cast<int>(parse_int(value, key));
    } else if (key == "margins") {
      cfg.margins.clear();
      for (const std::string& entry : split(value, ','))
        cfg.margins.push_back(parse_double(entry, key));
    } else if (key == "ps_magnitude") {
      if (value == "auto") {
        cfg.ps_magnitude = 0.0;
      } else {
        cfg.ps_magnitude = parse_double(value, key);
        if (cfg.ps_magnitude <= 0.0)
          throw std::invalid_argument("config: ps_magnitude must be positive or auto");
      }
    } else if (key == "fairness_weight") {
      cfg.fairness_weight = parse_double(value, key);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "' at line " +
                                  std::to_string(lineno));
    }
  }
  cfg.validate();
  return cfg;
}

NetworkConfig parse_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace cibeam
