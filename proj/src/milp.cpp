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

#include "cibeam/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>

namespace cibeam::milp {

int MilpModel::add_variable(double lower, double upper, double obj_coeff) {
  vars.push_back({lower, upper, false});
  objective.push_back(obj_coeff);
  return static_cast<int>(vars.size()) - 1;
}

int MilpModel::add_binary(double obj_coeff) {
  vars.push_back({0.0, 1.0, true});
  objective.push_back(obj_coeff);
  return static_cast<int>(vars.size()) - 1;
}

void MilpModel::add_row(std::vector<std::pair<int, double>> coeffs, Sense sense,
                        double rhs) {
  rows.push_back({std::move(coeffs), sense, rhs});
}

namespace {

constexpr double kDualTol = 1e-9;    // reduced-cost threshold for entering
constexpr double kRatioEps = 1e-9;   // smallest rate treated as limiting
constexpr double kDegenStep = 1e-11; // step below which a pivot counts as degenerate
constexpr int kDegenSwitch = 40;     // degenerate pivots before Bland's rule

// Dense bounded-variable simplex over columns [structural | slack | artificial].
// Maintains T = B^{-1} * A for the full column set plus the value of every
// column, basic or not. Nonbasic columns rest at a bound (or at zero when
// free); the basis is always triangularizable because it starts from unit
// columns and is only changed by valid pivots.
class BoundedSimplex {
 public:
  enum Position { kNonbasicLower = -1, kNonbasicUpper = -2, kNonbasicFree = -3 };

  BoundedSimplex(int rows, int cols)
      : m_(rows), n_(cols), T_(Mat::Zero(rows, cols)), lo_(cols, 0.0),
        hi_(cols, kInf), val_(cols, 0.0), pos_(cols, kNonbasicLower),
        basis_(rows, -1) {}

  Mat& tableau() { return T_; }
  double& lower(int j) { return lo_[static_cast<std::size_t>(j)]; }
  double& upper(int j) { return hi_[static_cast<std::size_t>(j)]; }
  double& value(int j) { return val_[static_cast<std::size_t>(j)]; }
  void set_basic(int row, int col) {
    basis_[static_cast<std::size_t>(row)] = col;
    pos_[static_cast<std::size_t>(col)] = row;
  }
  void set_nonbasic(int col, Position p) { pos_[static_cast<std::size_t>(col)] = p; }
  bool is_basic(int col) const { return pos_[static_cast<std::size_t>(col)] >= 0; }

  // Maximizes cost over the current basis; returns false on unboundedness.
  bool optimize(const Vec& cost) {
    const long iter_cap = 10000L + 100L * (m_ + n_);
    int degen_streak = 0;
    bool bland = false;
    for (long iter = 0; iter < iter_cap; ++iter) {
      Vec cb(m_);
      for (int i = 0; i < m_; ++i) cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
      Vec reduced = cost - T_.transpose() * cb;

      int enter = -1;
      int dir = 0;
      double best_score = kDualTol;
      for (int j = 0; j < n_; ++j) {
        if (is_basic(j)) continue;
        double d = reduced[j];
        int cand_dir = 0;
        switch (pos_[static_cast<std::size_t>(j)]) {
          case kNonbasicLower: if (d > kDualTol) cand_dir = 1; break;
          case kNonbasicUpper: if (d < -kDualTol) cand_dir = -1; break;
          case kNonbasicFree:
            if (d > kDualTol) cand_dir = 1;
            else if (d < -kDualTol) cand_dir = -1;
            break;
          default: break;
        }
        if (cand_dir == 0) continue;
        if (bland) { enter = j; dir = cand_dir; break; }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter < 0) return true;  // optimal for this cost

      // Ratio test: the entering column moves by dir * delta and each basic
      // value changes at rate -T(i, enter) * dir per unit delta.
      double limit = hi_[static_cast<std::size_t>(enter)] - lo_[static_cast<std::size_t>(enter)];
      if (pos_[static_cast<std::size_t>(enter)] == kNonbasicFree) limit = kInf;
      double best_delta = limit;
      int leave_row = -1;
      for (int i = 0; i < m_; ++i) {
        double rate = -T_(i, enter) * dir;
        int b = basis_[static_cast<std::size_t>(i)];
        double delta = kInf;
        if (rate > kRatioEps) {
          if (hi_[static_cast<std::size_t>(b)] == kInf) continue;
          delta = (hi_[static_cast<std::size_t>(b)] - val_[static_cast<std::size_t>(b)]) / rate;
        } else if (rate < -kRatioEps) {
          if (lo_[static_cast<std::size_t>(b)] == -kInf) continue;
          delta = (lo_[static_cast<std::size_t>(b)] - val_[static_cast<std::size_t>(b)]) / rate;
        } else {
          continue;
        }
        delta = std::max(delta, 0.0);
        if (delta < best_delta ||
            (delta == best_delta && leave_row >= 0 &&
             b < basis_[static_cast<std::size_t>(leave_row)])) {
          best_delta = delta;
          leave_row = i;
        }
      }
      if (best_delta == kInf) return false;  // unbounded ray

      if (best_delta < kDegenStep) {
        if (++degen_streak > kDegenSwitch) bland = true;
      } else {
        degen_streak = 0;
        bland = false;
      }

      for (int i = 0; i < m_; ++i) {
        int b = basis_[static_cast<std::size_t>(i)];
        val_[static_cast<std::size_t>(b)] += -T_(i, enter) * dir * best_delta;
      }
      val_[static_cast<std::size_t>(enter)] += dir * best_delta;

      if (leave_row < 0) {
        // The entering column hit its opposite bound: no basis change.
        pos_[static_cast<std::size_t>(enter)] =
            (dir > 0) ? kNonbasicUpper : kNonbasicLower;
        val_[static_cast<std::size_t>(enter)] =
            (dir > 0) ? hi_[static_cast<std::size_t>(enter)]
                      : lo_[static_cast<std::size_t>(enter)];
        continue;
      }

      int leave = basis_[static_cast<std::size_t>(leave_row)];
      double rate_r = -T_(leave_row, enter) * dir;
      if (rate_r > 0.0) {
        pos_[static_cast<std::size_t>(leave)] = kNonbasicUpper;
        val_[static_cast<std::size_t>(leave)] = hi_[static_cast<std::size_t>(leave)];
      } else {
        pos_[static_cast<std::size_t>(leave)] = kNonbasicLower;
        val_[static_cast<std::size_t>(leave)] = lo_[static_cast<std::size_t>(leave)];
      }

      double piv = T_(leave_row, enter);
      T_.row(leave_row) /= piv;
      for (int i = 0; i < m_; ++i) {
        if (i == leave_row) continue;
        double f = T_(i, enter);
        if (f != 0.0) T_.row(i) -= f * T_.row(leave_row);
      }
      set_basic(leave_row, enter);
    }
    throw std::runtime_error("simplex: iteration cap exceeded");
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  int basis_at(int row) const { return basis_[static_cast<std::size_t>(row)]; }

 private:
  int m_, n_;
  Mat T_;
  std::vector<double> lo_, hi_, val_;
  std::vector<int> pos_;
  std::vector<int> basis_;
};

void validate_model(const MilpModel& model) {
  int n = model.num_vars();
  if (static_cast<int>(model.objective.size()) != n)
    throw std::invalid_argument("milp: objective size mismatch");
  for (const auto& v : model.vars) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
      throw std::invalid_argument("milp: bad variable bounds");
  }
  for (const auto& row : model.rows) {
    if (!std::isfinite(row.rhs))
      throw std::invalid_argument("milp: non-finite right-hand side");
    for (const auto& [j, c] : row.coeffs) {
      if (j < 0 || j >= n) throw std::invalid_argument("milp: coefficient index out of range");
      if (!std::isfinite(c)) throw std::invalid_argument("milp: non-finite coefficient");
    }
  }
}

LpSolution solve_lp_impl(const MilpModel& model) {
  const int n = model.num_vars();
  const int m = static_cast<int>(model.rows.size());
  const int n_slack = m;

  // Decide initial nonbasic values so violated rows (and only those) get an
  // artificial column.
  std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    const auto& v = model.vars[static_cast<std::size_t>(j)];
    if (v.lower != -kInf) x0[static_cast<std::size_t>(j)] = v.lower;
    else if (v.upper != kInf) x0[static_cast<std::size_t>(j)] = v.upper;
  }

  std::vector<double> slack_lo(static_cast<std::size_t>(m)), slack_hi(static_cast<std::size_t>(m));
  std::vector<double> slack_nominal(static_cast<std::size_t>(m));
  std::vector<int> art_sign(static_cast<std::size_t>(m), 0);
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    const auto& row = model.rows[static_cast<std::size_t>(i)];
    switch (row.sense) {
      case Sense::Le: slack_lo[static_cast<std::size_t>(i)] = 0.0; slack_hi[static_cast<std::size_t>(i)] = kInf; break;
      case Sense::Ge: slack_lo[static_cast<std::size_t>(i)] = -kInf; slack_hi[static_cast<std::size_t>(i)] = 0.0; break;
      case Sense::Eq: slack_lo[static_cast<std::size_t>(i)] = 0.0; slack_hi[static_cast<std::size_t>(i)] = 0.0; break;
    }
    double act = 0.0;
    for (const auto& [j, c] : row.coeffs) act += c * x0[static_cast<std::size_t>(j)];
    double s = row.rhs - act;
    slack_nominal[static_cast<std::size_t>(i)] = s;
    if (s < slack_lo[static_cast<std::size_t>(i)] || s > slack_hi[static_cast<std::size_t>(i)]) {
      art_sign[static_cast<std::size_t>(i)] =
          (s > slack_hi[static_cast<std::size_t>(i)]) ? 1 : -1;
      ++n_art;
    }
  }

  const int n_total = n + n_slack + n_art;
  BoundedSimplex sx(m, n_total);

  Mat& T = sx.tableau();
  for (int i = 0; i < m; ++i)
    for (const auto& [j, c] : model.rows[static_cast<std::size_t>(i)].coeffs)
      T(i, j) += c;
  for (int i = 0; i < m; ++i) T(i, n + i) = 1.0;

  for (int j = 0; j < n; ++j) {
    const auto& v = model.vars[static_cast<std::size_t>(j)];
    sx.lower(j) = v.lower;
    sx.upper(j) = v.upper;
    sx.value(j) = x0[static_cast<std::size_t>(j)];
    if (v.lower != -kInf)
      sx.set_nonbasic(j, BoundedSimplex::kNonbasicLower);
    else if (v.upper != kInf)
      sx.set_nonbasic(j, BoundedSimplex::kNonbasicUpper);
    else
      sx.set_nonbasic(j, BoundedSimplex::kNonbasicFree);
  }

  Vec phase1_cost = Vec::Zero(n_total);
  int art = n + n_slack;
  for (int i = 0; i < m; ++i) {
    int sj = n + i;
    sx.lower(sj) = slack_lo[static_cast<std::size_t>(i)];
    sx.upper(sj) = slack_hi[static_cast<std::size_t>(i)];
    double s = slack_nominal[static_cast<std::size_t>(i)];
    if (art_sign[static_cast<std::size_t>(i)] == 0) {
      sx.value(sj) = s;
      sx.set_basic(i, sj);
    } else {
      double sigma = std::clamp(s, slack_lo[static_cast<std::size_t>(i)],
                                slack_hi[static_cast<std::size_t>(i)]);
      sx.value(sj) = sigma;
      sx.set_nonbasic(sj, sigma == slack_lo[static_cast<std::size_t>(i)]
                              ? BoundedSimplex::kNonbasicLower
                              : BoundedSimplex::kNonbasicUpper);
      double eps = art_sign[static_cast<std::size_t>(i)];
      T(i, art) = eps;
      if (eps < 0) T.row(i) *= -1.0;  // keep the basis column at +1
      sx.lower(art) = 0.0;
      sx.upper(art) = kInf;
      sx.value(art) = std::abs(s - sigma);
      sx.set_basic(i, art);
      phase1_cost[art] = -1.0;
      ++art;
    }
  }

  LpSolution out;
  if (n_art > 0) {
    if (!sx.optimize(phase1_cost))
      throw std::runtime_error("simplex: phase 1 unbounded");
    double infeas = 0.0;
    for (int j = n + n_slack; j < n_total; ++j) infeas += sx.value(j);
    if (infeas > 1e-9) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    for (int j = n + n_slack; j < n_total; ++j) {
      sx.upper(j) = 0.0;
      sx.value(j) = 0.0;
    }
  }

  Vec phase2_cost = Vec::Zero(n_total);
  for (int j = 0; j < n; ++j) phase2_cost[j] = model.objective[static_cast<std::size_t>(j)];
  if (!sx.optimize(phase2_cost)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.x.resize(n);
  for (int j = 0; j < n; ++j) out.x[j] = sx.value(j);
  out.objective = 0.0;
  for (int j = 0; j < n; ++j) out.objective += model.objective[static_cast<std::size_t>(j)] * out.x[j];
  return out;
}

}  // namespace

LpSolution solve_lp(const MilpModel& model) {
  validate_model(model);
  if (model.rows.empty() && model.vars.empty()) {
    LpSolution out;
    out.status = LpStatus::Optimal;
    out.x.resize(0);
    return out;
  }
  return solve_lp_impl(model);
}

namespace {

struct BnbNode {
  double bound = 0.0;
  long order = 0;
  std::vector<signed char> fix;  // per binary: -1 free, 0 or 1 fixed
  Vec x;
};

struct NodeWorse {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.order > b.order;
  }
};

}  // namespace

MilpSolution solve_binary_milp(const MilpModel& model, const MilpOptions& options) {
  validate_model(model);
  std::vector<int> binaries;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.vars[static_cast<std::size_t>(j)].binary) binaries.push_back(j);

  const auto t_start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (options.time_limit_s <= 0.0) return false;
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t_start;
    return elapsed.count() > options.time_limit_s;
  };

  MilpSolution out;
  out.status = MilpStatus::Infeasible;
  bool have_incumbent = false;
  double incumbent = -kInf;
  Vec incumbent_x;

  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeWorse> open;
  long next_order = 0;

  auto evaluate = [&](std::vector<signed char> fix) {
    MilpModel relaxed = model;
    for (std::size_t b = 0; b < binaries.size(); ++b) {
      if (fix[b] < 0) continue;
      auto& v = relaxed.vars[static_cast<std::size_t>(binaries[b])];
      v.lower = v.upper = static_cast<double>(fix[b]);
    }
    ++out.nodes;
    LpSolution lp = solve_lp_impl(relaxed);
    if (lp.status == LpStatus::Unbounded)
      throw std::runtime_error("milp: relaxation unbounded");
    if (lp.status != LpStatus::Optimal) return;
    if (have_incumbent && lp.objective <= incumbent + 1e-9) return;

    bool integral = true;
    for (int b : binaries) {
      double frac = std::abs(lp.x[b] - std::round(lp.x[b]));
      if (frac > options.int_tol) {
        integral = false;
        break;
      }
    }
    if (integral) {
      for (int b : binaries) lp.x[b] = std::round(lp.x[b]);
      incumbent = lp.objective;
      incumbent_x = lp.x;
      have_incumbent = true;
      return;
    }
    BnbNode node;
    node.bound = lp.objective;
    node.order = next_order++;
    node.fix = std::move(fix);
    node.x = std::move(lp.x);
    open.push(std::move(node));
  };

  evaluate(std::vector<signed char>(binaries.size(), -1));

  bool limited = false;
  while (!open.empty()) {
    if (out.nodes >= options.node_limit || out_of_time()) {
      limited = true;
      break;
    }
    BnbNode node = open.top();
    open.pop();
    if (have_incumbent && node.bound <= incumbent + 1e-9) continue;

    int branch = -1;
    double most_fractional = -1.0;
    for (std::size_t b = 0; b < binaries.size(); ++b) {
      if (node.fix[b] >= 0) continue;
      double xv = node.x[binaries[b]];
      double frac = std::min(xv - std::floor(xv), std::ceil(xv) - xv);
      if (frac > most_fractional + 1e-15) {
        most_fractional = frac;
        branch = static_cast<int>(b);
      }
    }
    if (branch < 0) continue;  // all binaries pinned; node was fully explored

    for (signed char v : {static_cast<signed char>(0), static_cast<signed char>(1)}) {
      std::vector<signed char> fix = node.fix;
      fix[static_cast<std::size_t>(branch)] = v;
      evaluate(std::move(fix));
    }
  }

  if (have_incumbent) {
    out.x = incumbent_x;
    out.objective = incumbent;
    out.bound = incumbent;
  }
  if (limited) {
    out.status = MilpStatus::GapLimited;
    double open_bound = have_incumbent ? incumbent : -kInf;
    // The heap top dominates every open node.
    if (!open.empty()) open_bound = std::max(open_bound, open.top().bound);
    out.bound = open_bound;
  } else if (have_incumbent) {
    out.status = MilpStatus::Optimal;
  }
  return out;
}

std::string dump_lp_format(const MilpModel& model) {
  std::ostringstream os;
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  os << "maximize\n obj:";
  for (int j = 0; j < model.num_vars(); ++j) {
    double c = model.objective[static_cast<std::size_t>(j)];
    if (c != 0.0) os << ' ' << (c >= 0 ? "+" : "-") << ' ' << num(std::abs(c)) << " x" << j;
  }
  os << "\nsubject to\n";
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    const auto& row = model.rows[i];
    os << " r" << i << ":";
    for (const auto& [j, c] : row.coeffs)
      os << ' ' << (c >= 0 ? "+" : "-") << ' ' << num(std::abs(c)) << " x" << j;
    switch (row.sense) {
      case Sense::Le: os << " <= "; break;
      case Sense::Ge: os << " >= "; break;
      case Sense::Eq: os << " = "; break;
    }
    os << num(row.rhs) << '\n';
  }
  os << "bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.vars[static_cast<std::size_t>(j)];
    if (v.binary) continue;
    os << ' ' << (v.lower == -kInf ? "-inf" : num(v.lower)) << " <= x" << j
       << " <= " << (v.upper == kInf ? "+inf" : num(v.upper)) << '\n';
  }
  bool any_binary = false;
  for (const auto& v : model.vars) any_binary |= v.binary;
  if (any_binary) {
    os << "binary\n";
    for (int j = 0; j < model.num_vars(); ++j)
      if (model.vars[static_cast<std::size_t>(j)].binary) os << " x" << j;
    os << '\n';
  }
  return os.str();
}

}  // namespace cibeam::milp
