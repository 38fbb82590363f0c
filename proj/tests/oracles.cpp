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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cibeam::test {
namespace {

constexpr double kFeasTol = 1e-7;

// One candidate active condition: a row of the constraint matrix treated as
// an equality, or a variable pinned at one of its finite bounds.
struct Condition {
  Vec normal;
  double rhs = 0.0;
};

bool point_feasible(const milp::MilpModel& model, const Vec& x, double tol) {
  const int n = model.num_vars();
  for (int i = 0; i < n; ++i) {
    if (x[i] < model.vars[i].lower - tol) return false;
    if (x[i] > model.vars[i].upper + tol) return false;
  }
  for (const auto& row : model.rows) {
    double lhs = 0.0;
    double scale = std::abs(row.rhs);
    for (const auto& [j, c] : row.coeffs) {
      lhs += c * x[j];
      scale = std::max(scale, std::abs(c));
    }
    const double slack = row.rhs - lhs;
    const double t = tol * std::max(1.0, scale);
    switch (row.sense) {
      case milp::Sense::Le:
        if (slack < -t) return false;
        break;
      case milp::Sense::Ge:
        if (slack > t) return false;
        break;
      case milp::Sense::Eq:
        if (std::abs(slack) > t) return false;
        break;
    }
  }
  return true;
}

double objective_value(const milp::MilpModel& model, const Vec& x) {
  double v = 0.0;
  for (int i = 0; i < model.num_vars(); ++i) v += model.objective[i] * x[i];
  return v;
}

}  // namespace

LpOracleResult lp_vertex_oracle(const milp::MilpModel& model) {
  const int n = model.num_vars();
  LpOracleResult best;
  if (n == 0) {
    best.feasible = point_feasible(model, Vec::Zero(0), kFeasTol);
    best.objective = 0.0;
    best.x = Vec::Zero(0);
    return best;
  }

  std::vector<Condition> conds;
  for (const auto& row : model.rows) {
    Condition c;
    c.normal = Vec::Zero(n);
    for (const auto& [j, coef] : row.coeffs) c.normal[j] += coef;
    c.rhs = row.rhs;
    conds.push_back(std::move(c));
  }
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(model.vars[i].lower)) {
      Condition c;
      c.normal = Vec::Zero(n);
      c.normal[i] = 1.0;
      c.rhs = model.vars[i].lower;
      conds.push_back(std::move(c));
    }
    if (std::isfinite(model.vars[i].upper)) {
      Condition c;
      c.normal = Vec::Zero(n);
      c.normal[i] = 1.0;
      c.rhs = model.vars[i].upper;
      conds.push_back(std::move(c));
    }
  }
  const int m = static_cast<int>(conds.size());
  if (m < n) return best;  // region unbounded or trivially vertex-free

  best.objective = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  Mat A(n, n);
  Vec b(n);
  while (true) {
    for (int i = 0; i < n; ++i) {
      A.row(i) = conds[pick[i]].normal.transpose();
      b[i] = conds[pick[i]].rhs;
    }
    Eigen::FullPivLU<Mat> lu(A);
    if (lu.isInvertible()) {
      Vec x = lu.solve(b);
      if (point_feasible(model, x, kFeasTol)) {
        const double obj = objective_value(model, x);
        if (!best.feasible || obj > best.objective) {
          best.feasible = true;
          best.objective = obj;
          best.x = x;
        }
      }
    }
    // Next lexicographic combination of n indices out of m.
    int k = n - 1;
    while (k >= 0 && pick[k] == m - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int i = k + 1; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  if (!best.feasible) best.objective = 0.0;
  return best;
}

MilpOracleResult milp_enumeration_oracle(const milp::MilpModel& model) {
  std::vector<int> bin_idx;
  std::vector<int> cont_idx;
  for (int i = 0; i < model.num_vars(); ++i) {
    if (model.vars[i].binary) {
      bin_idx.push_back(i);
    } else {
      cont_idx.push_back(i);
    }
  }
  const int nb = static_cast<int>(bin_idx.size());
  MilpOracleResult best;
  best.objective = -std::numeric_limits<double>::infinity();

  std::vector<double> fixed(model.num_vars(), 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nb); ++mask) {
    for (int i = 0; i < nb; ++i) {
      fixed[bin_idx[i]] = (mask >> i) & 1 ? 1.0 : 0.0;
    }
    // Substitute the fixed binaries out of the model.
    milp::MilpModel sub;
    double const_obj = 0.0;
    std::vector<int> new_index(model.num_vars(), -1);
    for (int i : cont_idx) {
      new_index[i] = sub.add_variable(model.vars[i].lower, model.vars[i].upper,
                                      model.objective[i]);
    }
    for (int i : bin_idx) const_obj += model.objective[i] * fixed[i];
    bool rows_ok = true;
    for (const auto& row : model.rows) {
      std::vector<std::pair<int, double>> coeffs;
      double rhs = row.rhs;
      double scale = std::abs(row.rhs);
      for (const auto& [j, c] : row.coeffs) {
        scale = std::max(scale, std::abs(c));
        if (new_index[j] >= 0) {
          coeffs.emplace_back(new_index[j], c);
        } else {
          rhs -= c * fixed[j];
        }
      }
      if (coeffs.empty()) {
        const double t = kFeasTol * std::max(1.0, scale);
        const bool ok = (row.sense == milp::Sense::Le && rhs >= -t) ||
                        (row.sense == milp::Sense::Ge && rhs <= t) ||
                        (row.sense == milp::Sense::Eq && std::abs(rhs) <= t);
        if (!ok) {
          rows_ok = false;
          break;
        }
        continue;
      }
      sub.add_row(std::move(coeffs), row.sense, rhs);
    }
    if (!rows_ok) continue;

    double obj = const_obj;
    Vec cont_x = Vec::Zero(static_cast<int>(cont_idx.size()));
    if (!cont_idx.empty()) {
      LpOracleResult lp = lp_vertex_oracle(sub);
      if (!lp.feasible) continue;
      obj += lp.objective;
      cont_x = lp.x;
    }
    if (!best.feasible || obj > best.objective) {
      best.feasible = true;
      best.objective = obj;
      best.x.assign(model.num_vars(), 0.0);
      for (int i : bin_idx) best.x[i] = fixed[i];
      for (std::size_t i = 0; i < cont_idx.size(); ++i) {
        best.x[cont_idx[i]] = cont_x[static_cast<int>(i)];
      }
    }
  }
  if (!best.feasible) best.objective = 0.0;
  return best;
}

namespace {

// Projection onto { y : y'Py + q'y <= r } for symmetric PSD P, via the
// KKT parameterization y(lam) = (I + 2 lam P)^{-1} (x - lam q) and a
// bracket-and-bisect on lam (the constraint value decreases in lam).
class EllipsoidProjector {
 public:
  EllipsoidProjector(const Mat& P, const Vec& q, double r) : q_(q), r_(r) {
    Eigen::SelfAdjointEigenSolver<Mat> es(P);
    V_ = es.eigenvectors();
    d_ = es.eigenvalues().cwiseMax(0.0);
  }

  double value(const Vec& y) const {
    return y.dot(V_ * d_.asDiagonal() * (V_.transpose() * y)) + q_.dot(y) - r_;
  }

  void project(Vec& x) const {
    if (value(x) <= 0.0) return;
    const Vec z = V_.transpose() * x;
    const Vec c = V_.transpose() * q_;
    auto eval = [&](double lam) {
      const int n = static_cast<int>(z.size());
      double f = 0.0;
      Vec w(n);
      for (int i = 0; i < n; ++i) {
        w[i] = (z[i] - lam * c[i]) / (1.0 + 2.0 * lam * d_[i]);
        f += d_[i] * w[i] * w[i] + c[i] * w[i];
      }
      return std::make_pair(f - r_, w);
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 400 && eval(hi).first > 0.0; ++it) {
      lo = hi;
      hi *= 2.0;
    }
    for (int it = 0; it < 160; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (eval(mid).first > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    x = V_ * eval(hi).second;
  }

 private:
  Mat V_;
  Vec d_;
  Vec q_;
  double r_;
};

struct PocsSets {
  std::vector<EllipsoidProjector> ellipsoids;  // quads, then the level set
  Mat lin_coeffs;
  Vec lin_rhs;
  Vec row_norm2;
  double scale = 1.0;

  double max_violation(const Vec& x) const {
    double v = 0.0;
    if (lin_coeffs.rows() > 0) {
      const Vec resid = lin_coeffs * x - lin_rhs;
      v = std::max(v, resid.maxCoeff());
    }
    for (const auto& e : ellipsoids) v = std::max(v, e.value(x));
    return v;
  }

  // Cyclic projections from x; true when the residual drops under tol.
  bool converge(Vec& x, int iters, double tol) const {
    double last = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iters; ++it) {
      for (int i = 0; i < lin_coeffs.rows(); ++i) {
        const double viol = lin_coeffs.row(i).dot(x) - lin_rhs[i];
        if (viol > 0.0) x -= (viol / row_norm2[i]) * lin_coeffs.row(i).transpose();
      }
      for (const auto& e : ellipsoids) e.project(x);
      const double v = max_violation(x);
      if (v <= tol) return true;
      if (it % 200 == 199) {
        if (last - v < 1e-13 * scale) return false;  // stalled short of tol
        last = v;
      }
    }
    return max_violation(x) <= tol;
  }
};

}  // namespace

ProjectionOracleResult dykstra_projection_oracle(const QcqpProblem& problem,
                                                 int feas_iters,
                                                 int dykstra_iters) {
  ProjectionOracleResult out;
  const int n = problem.dim();

  // Change of variables u = L'(x - x_c) with P0 = L L' and x_c the
  // unconstrained minimum: the objective becomes |u|^2 plus a constant, so
  // the constrained minimizer is the projection of u = 0 onto the
  // transformed constraint set.
  Eigen::LLT<Mat> llt(problem.P0);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("oracle: objective matrix must be positive definite");
  const Vec x_c = llt.solve(-0.5 * problem.q0);
  const Mat A = llt.matrixU().solve(Mat::Identity(n, n));  // x = A u + x_c
  auto back = [&](const Vec& u) { return Vec(A * u + x_c); };

  const int m_lin = static_cast<int>(problem.lin_coeffs.rows());
  PocsSets sets;
  sets.lin_coeffs.resize(m_lin, n);
  sets.lin_rhs.resize(m_lin);
  sets.row_norm2 = Vec::Ones(m_lin);
  for (int i = 0; i < m_lin; ++i) {
    const Vec c = problem.lin_coeffs.row(i).transpose();
    sets.lin_coeffs.row(i) = (A.transpose() * c).transpose();
    sets.lin_rhs[i] = problem.lin_rhs[i] - c.dot(x_c);
    sets.row_norm2[i] = std::max(sets.lin_coeffs.row(i).squaredNorm(), 1e-300);
  }
  for (const auto& qc : problem.quad) {
    const Mat P_u = A.transpose() * qc.P * A;
    const Vec q_u = A.transpose() * (2.0 * qc.P * x_c + qc.q);
    const double r_u = qc.rhs - x_c.dot(qc.P * x_c) - qc.q.dot(x_c);
    sets.ellipsoids.emplace_back(0.5 * (P_u + P_u.transpose()), q_u, r_u);
  }
  sets.scale = 1.0;
  if (m_lin > 0) sets.scale += sets.lin_rhs.cwiseAbs().maxCoeff();
  const double feas_tol = 1e-9 * sets.scale;

  // Feasibility screen with plain cyclic projections; a stall short of the
  // tolerance reports the intersection empty.
  Vec u_feas = Vec::Zero(n);
  if (sets.max_violation(u_feas) > 0.0 &&
      !sets.converge(u_feas, feas_iters, feas_tol)) {
    out.feasible = false;
    return out;
  }

  // Dykstra's method: cyclic projections with one correction term per set
  // converge to the projection of the start point onto the intersection.
  const int sets_total = m_lin + static_cast<int>(sets.ellipsoids.size());
  std::vector<Vec> corr(static_cast<std::size_t>(sets_total), Vec::Zero(n));
  Vec u = Vec::Zero(n);
  for (int it = 0; it < dykstra_iters; ++it) {
    const Vec u_prev = u;
    int idx = 0;
    for (int i = 0; i < m_lin; ++i, ++idx) {
      const Vec y = u + corr[static_cast<std::size_t>(idx)];
      Vec z = y;
      const double viol = sets.lin_coeffs.row(i).dot(y) - sets.lin_rhs[i];
      if (viol > 0.0)
        z -= (viol / sets.row_norm2[i]) * sets.lin_coeffs.row(i).transpose();
      corr[static_cast<std::size_t>(idx)] = y - z;
      u = z;
    }
    for (const auto& e : sets.ellipsoids) {
      const Vec y = u + corr[static_cast<std::size_t>(idx)];
      Vec z = y;
      e.project(z);
      corr[static_cast<std::size_t>(idx)] = y - z;
      u = z;
      ++idx;
    }
    const double change = (u - u_prev).lpNorm<Eigen::Infinity>();
    if (change <= 1e-13 * (1.0 + u.lpNorm<Eigen::Infinity>()) &&
        sets.max_violation(u) <= feas_tol)
      break;
  }
  out.feasible = true;
  out.x = back(u);
  out.objective = out.x.dot(problem.P0 * out.x) + problem.q0.dot(out.x);
  return out;
}

}  // namespace cibeam::test
