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

#include "cibeam/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cibeam {
namespace {

// Everything below works on gains normalized by their maximum so solver
// tolerances are scale-free; the normalization multiplies the objective by
// a positive constant and leaves the argmax untouched.
Mat normalize_gains(const Mat& gains, double& scale) {
  scale = gains.size() > 0 ? gains.maxCoeff() : 0.0;
  if (scale <= 0.0) {
    scale = 1.0;
    return Mat::Zero(gains.rows(), gains.cols());
  }
  return gains / scale;
}

void check_gains(const Mat& gains) {
  if (gains.rows() < 1 || gains.cols() < 1)
    throw std::invalid_argument("assignment: empty gain matrix");
  if (!gains.allFinite() || gains.minCoeff() < 0.0)
    throw std::invalid_argument("assignment: gains must be finite and >= 0");
}

void check_caps(const Mat& gains, const std::vector<int>& row_owner,
                const std::vector<int>& rf_caps) {
  if (static_cast<int>(row_owner.size()) != gains.rows())
    throw std::invalid_argument("assignment: row_owner size mismatch");
  std::vector<int> rows_per_bs(rf_caps.size(), 0);
  for (int owner : row_owner) {
    if (owner < 0 || owner >= static_cast<int>(rf_caps.size()))
      throw std::invalid_argument("assignment: row owner out of range");
    ++rows_per_bs[static_cast<std::size_t>(owner)];
  }
  long capacity = 0;
  for (std::size_t g = 0; g < rf_caps.size(); ++g) {
    if (rf_caps[g] < 0) throw std::invalid_argument("assignment: negative cap");
    capacity += std::min(rf_caps[g], rows_per_bs[g]);
  }
  if (capacity < gains.cols())
    throw InfeasibleError("assignment: station caps cover only " +
                          std::to_string(capacity) + " users, need " +
                          std::to_string(gains.cols()));
}

AssignmentResult finish_from_alpha(const Mat& gains, double fairness_weight,
                                   Mat alpha) {
  AssignmentResult res;
  res.alpha = std::move(alpha);
  Vec user_gain = Vec::Zero(gains.cols());
  double total = 0.0;
  for (int r = 0; r < gains.rows(); ++r)
    for (int k = 0; k < gains.cols(); ++k)
      if (res.alpha(r, k) != 0.0) {
        user_gain[k] += gains(r, k);
        total += gains(r, k);
      }
  res.min_user_gain = user_gain.minCoeff();
  res.objective = total + fairness_weight * res.min_user_gain;
  return res;
}

AssignmentResult solve_exact(const Mat& gains, const std::vector<int>* row_owner,
                             const std::vector<int>* rf_caps,
                             double fairness_weight,
                             const milp::MilpOptions& options) {
  const int rows = static_cast<int>(gains.rows());
  const int users = static_cast<int>(gains.cols());
  double scale = 1.0;
  Mat q = normalize_gains(gains, scale);

  milp::MilpModel model;
  auto idx = [users](int r, int k) { return r * users + k; };
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < users; ++k) model.add_binary(q(r, k));
  int tau = model.add_variable(0.0, milp::kInf, fairness_weight);

  for (int r = 0; r < rows; ++r) {
    std::vector<std::pair<int, double>> coeffs;
    for (int k = 0; k < users; ++k) coeffs.emplace_back(idx(r, k), 1.0);
    model.add_row(std::move(coeffs), milp::Sense::Le, 1.0);
  }
  for (int k = 0; k < users; ++k) {
    std::vector<std::pair<int, double>> coeffs;
    for (int r = 0; r < rows; ++r) coeffs.emplace_back(idx(r, k), 1.0);
    model.add_row(std::move(coeffs), milp::Sense::Ge, 1.0);
  }
  for (int k = 0; k < users; ++k) {
    std::vector<std::pair<int, double>> coeffs;
    for (int r = 0; r < rows; ++r) coeffs.emplace_back(idx(r, k), q(r, k));
    coeffs.emplace_back(tau, -1.0);
    model.add_row(std::move(coeffs), milp::Sense::Ge, 0.0);
  }
  if (row_owner != nullptr) {
    for (std::size_t g = 0; g < rf_caps->size(); ++g) {
      std::vector<std::pair<int, double>> coeffs;
      for (int r = 0; r < rows; ++r)
        if ((*row_owner)[static_cast<std::size_t>(r)] == static_cast<int>(g))
          for (int k = 0; k < users; ++k) coeffs.emplace_back(idx(r, k), 1.0);
      model.add_row(std::move(coeffs), milp::Sense::Le,
                    static_cast<double>((*rf_caps)[g]));
    }
  }

  milp::MilpSolution sol = solve_binary_milp(model, options);
  if (sol.status == milp::MilpStatus::Infeasible)
    throw InfeasibleError("assignment: no feasible chain-to-user assignment");

  Mat alpha = Mat::Zero(rows, users);
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < users; ++k) alpha(r, k) = sol.x[idx(r, k)];
  AssignmentResult res = finish_from_alpha(gains, fairness_weight, std::move(alpha));
  res.status = sol.status;
  res.exact = true;
  res.nodes = sol.nodes;
  return res;
}

// Assignment state for the heuristic: row -> user (or -1) plus the running
// per-user gains on the normalized scale.
struct HeurState {
  std::vector<int> row_user;
  std::vector<int> user_rows;
  std::vector<int> bs_used;
  Vec user_gain;
};

double heur_objective(const HeurState& st, double fairness_weight) {
  return st.user_gain.sum() + fairness_weight * st.user_gain.minCoeff();
}

AssignmentResult solve_heuristic(const Mat& gains, const std::vector<int>* row_owner,
                                 const std::vector<int>* rf_caps,
                                 double fairness_weight) {
  const int rows = static_cast<int>(gains.rows());
  const int users = static_cast<int>(gains.cols());
  double scale = 1.0;
  Mat q = normalize_gains(gains, scale);

  HeurState st;
  st.row_user.assign(static_cast<std::size_t>(rows), -1);
  st.user_rows.assign(static_cast<std::size_t>(users), 0);
  st.bs_used.assign(row_owner != nullptr ? rf_caps->size() : 1, 0);
  st.user_gain = Vec::Zero(users);

  auto cap_free = [&](int r) {
    if (row_owner == nullptr) return true;
    int g = (*row_owner)[static_cast<std::size_t>(r)];
    return st.bs_used[static_cast<std::size_t>(g)] < (*rf_caps)[static_cast<std::size_t>(g)];
  };
  auto attach = [&](int r, int k) {
    st.row_user[static_cast<std::size_t>(r)] = k;
    ++st.user_rows[static_cast<std::size_t>(k)];
    st.user_gain[k] += q(r, k);
    if (row_owner != nullptr)
      ++st.bs_used[static_cast<std::size_t>((*row_owner)[static_cast<std::size_t>(r)])];
  };
  auto detach = [&](int r) {
    int k = st.row_user[static_cast<std::size_t>(r)];
    st.row_user[static_cast<std::size_t>(r)] = -1;
    --st.user_rows[static_cast<std::size_t>(k)];
    st.user_gain[k] -= q(r, k);
    if (row_owner != nullptr)
      --st.bs_used[static_cast<std::size_t>((*row_owner)[static_cast<std::size_t>(r)])];
  };

  // Seeding: highest gain first, one row per user so every user is covered.
  std::vector<char> seeded(static_cast<std::size_t>(users), 0);
  for (int round = 0; round < users; ++round) {
    int best_r = -1, best_k = -1;
    double best = -1.0;
    for (int r = 0; r < rows; ++r) {
      if (st.row_user[static_cast<std::size_t>(r)] >= 0 || !cap_free(r)) continue;
      for (int k = 0; k < users; ++k) {
        if (seeded[static_cast<std::size_t>(k)]) continue;
        if (q(r, k) > best) {
          best = q(r, k);
          best_r = r;
          best_k = k;
        }
      }
    }
    if (best_r < 0)
      throw InfeasibleError("assignment: heuristic could not cover all users");
    attach(best_r, best_k);
    seeded[static_cast<std::size_t>(best_k)] = 1;
  }

  // Residual rows: highest gain first while capacity remains.
  for (;;) {
    int best_r = -1, best_k = -1;
    double best = -1.0;
    for (int r = 0; r < rows; ++r) {
      if (st.row_user[static_cast<std::size_t>(r)] >= 0 || !cap_free(r)) continue;
      for (int k = 0; k < users; ++k) {
        if (q(r, k) > best) {
          best = q(r, k);
          best_r = r;
          best_k = k;
        }
      }
    }
    if (best_r < 0) break;
    attach(best_r, best_k);
  }

  // Local search: move one row to another user, or swap two rows' users.
  // First improvement in a fixed scan order keeps the result deterministic.
  const int max_passes = 100;
  for (int pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    double current = heur_objective(st, fairness_weight);
    for (int r = 0; r < rows; ++r) {
      int k0 = st.row_user[static_cast<std::size_t>(r)];
      if (k0 >= 0 && st.user_rows[static_cast<std::size_t>(k0)] < 2) continue;
      if (k0 < 0 && !cap_free(r)) continue;
      for (int k1 = 0; k1 < users; ++k1) {
        if (k1 == k0) continue;
        if (k0 >= 0) detach(r);
        attach(r, k1);
        double trial = heur_objective(st, fairness_weight);
        if (trial > current + 1e-12) {
          current = trial;
          improved = true;
          break;
        }
        detach(r);
        if (k0 >= 0) attach(r, k0);
      }
    }
    for (int r1 = 0; r1 < rows; ++r1) {
      int k1 = st.row_user[static_cast<std::size_t>(r1)];
      if (k1 < 0) continue;
      for (int r2 = r1 + 1; r2 < rows; ++r2) {
        int k2 = st.row_user[static_cast<std::size_t>(r2)];
        if (k2 < 0 || k2 == k1) continue;
        detach(r1);
        detach(r2);
        attach(r1, k2);
        attach(r2, k1);
        double trial = heur_objective(st, fairness_weight);
        if (trial > current + 1e-12) {
          current = trial;
          improved = true;
          k1 = k2;
          continue;
        }
        detach(r1);
        detach(r2);
        attach(r1, k1);
        attach(r2, k2);
      }
    }
    if (!improved) break;
  }

  Mat alpha = Mat::Zero(rows, users);
  for (int r = 0; r < rows; ++r)
    if (st.row_user[static_cast<std::size_t>(r)] >= 0)
      alpha(r, st.row_user[static_cast<std::size_t>(r)]) = 1.0;
  AssignmentResult res = finish_from_alpha(gains, fairness_weight, std::move(alpha));
  res.exact = false;
  return res;
}

}  // namespace

Mat gain_matrix_continuous(const ChannelSet& channels, const RfChainMap& chains) {
  const int users = channels.num_users();
  Mat gains(chains.total(), users);
  for (int r = 0; r < chains.total(); ++r) {
    const CMat& h = channels.per_bs[static_cast<std::size_t>(chains.bs_index[static_cast<std::size_t>(r)])];
    for (int k = 0; k < users; ++k) gains(r, k) = h.col(k).squaredNorm();
  }
  return gains;
}

Mat gain_matrix_codebook(const ChannelSet& channels,
                         const std::vector<CMat>& codebook_per_bs) {
  if (codebook_per_bs.size() != channels.per_bs.size())
    throw std::invalid_argument("gain_matrix_codebook: station count mismatch");
  const int users = channels.num_users();
  int total_codes = 0;
  for (const auto& cb : codebook_per_bs) total_codes += static_cast<int>(cb.cols());
  Mat gains(total_codes, users);
  int row = 0;
  for (std::size_t g = 0; g < codebook_per_bs.size(); ++g) {
    const CMat& cb = codebook_per_bs[g];
    const CMat& h = channels.per_bs[g];
    if (cb.rows() != h.rows())
      throw std::invalid_argument("gain_matrix_codebook: antenna count mismatch");
    for (int c = 0; c < cb.cols(); ++c, ++row)
      for (int k = 0; k < users; ++k)
        gains(row, k) = std::norm((cb.col(c).transpose() * h.col(k)).value());
  }
  return gains;
}

AssignmentResult solve_rf_assignment(const Mat& gains, double fairness_weight,
                                     const milp::MilpOptions& options) {
  check_gains(gains);
  if (gains.rows() < gains.cols())
    throw InfeasibleError("assignment: " + std::to_string(gains.rows()) +
                          " chains cannot cover " + std::to_string(gains.cols()) +
                          " users");
  return solve_exact(gains, nullptr, nullptr, fairness_weight, options);
}

AssignmentResult solve_code_assignment(const Mat& gains,
                                       const std::vector<int>& row_owner,
                                       const std::vector<int>& rf_caps,
                                       double fairness_weight,
                                       const milp::MilpOptions& options) {
  check_gains(gains);
  check_caps(gains, row_owner, rf_caps);
  return solve_exact(gains, &row_owner, &rf_caps, fairness_weight, options);
}

AssignmentResult heuristic_assignment(const Mat& gains, double fairness_weight) {
  check_gains(gains);
  if (gains.rows() < gains.cols())
    throw InfeasibleError("assignment: " + std::to_string(gains.rows()) +
                          " chains cannot cover " + std::to_string(gains.cols()) +
                          " users");
  return solve_heuristic(gains, nullptr, nullptr, fairness_weight);
}

AssignmentResult heuristic_assignment(const Mat& gains,
                                      const std::vector<int>& row_owner,
                                      const std::vector<int>& rf_caps,
                                      double fairness_weight) {
  check_gains(gains);
  check_caps(gains, row_owner, rf_caps);
  return solve_heuristic(gains, &row_owner, &rf_caps, fairness_weight);
}

}  // namespace cibeam
