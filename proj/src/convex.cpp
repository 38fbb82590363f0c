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

#include "cibeam/convex.hpp"

#include <algorithm>
#include <cmath>

#include "cibeam/milp.hpp"

namespace cibeam {
namespace {

constexpr double kMu = 10.0;            // surrogate-gap reduction factor
constexpr double kStrictInterior = 1e-12;
constexpr double kCapTol = 1e-9;

// The solver works on a rescaled copy: the variable is substituted
// x = var_scale * z so the minimizer sits near unit magnitude, each linear
// row is divided by its largest (substituted) coefficient and each quadratic
// constraint by its dominant datum. All of it only rescales the iterates and
// multipliers; the feasible set and the minimizer map back exactly. Vacuous
// all-zero rows are dropped up front.
struct ScaledProblem {
  Mat P0;
  Vec q0;
  Mat C;
  Vec d;
  std::vector<QuadConstraint> quad;
  double obj_scale = 1.0;
  double var_scale = 1.0;
  Vec lin_scale;
  Vec quad_scale;
  std::vector<int> lin_origin;
};

struct IpmResult {
  Vec x;
  Vec lam_lin;
  Vec lam_quad;
  int iterations = 0;
  bool converged = false;
};

double objective_value(const Mat& P0, const Vec& q0, const Vec& x) {
  return x.dot(P0 * x) + q0.dot(x);
}

// Primal-dual interior-point iteration with a log barrier on every
// constraint. x0 must be strictly feasible. use_quads selects whether the
// quadratic constraints take part or are ignored entirely.
IpmResult run_ipm(const ScaledProblem& sp, Vec x0, bool use_quads,
                  const QcqpOptions& opt) {
  const int n = static_cast<int>(sp.P0.rows());
  const int m_lin = static_cast<int>(sp.C.rows());
  const int m_quad = use_quads ? static_cast<int>(sp.quad.size()) : 0;
  const int m = m_lin + m_quad;

  IpmResult res;
  res.x = std::move(x0);
  res.lam_lin = Vec::Zero(m_lin);
  res.lam_quad = Vec::Zero(static_cast<int>(sp.quad.size()));

  if (m == 0) {
    Mat h = 2.0 * sp.P0;
    Eigen::LDLT<Mat> ldlt(h);
    Vec x = ldlt.solve(-sp.q0);
    if ((h * x + sp.q0).lpNorm<Eigen::Infinity>() >
        opt.tol * std::max(1.0, sp.q0.lpNorm<Eigen::Infinity>())) {
      Mat ridged = h + 1e-12 * (1.0 + h.diagonal().cwiseAbs().maxCoeff()) *
                           Mat::Identity(n, n);
      x = Eigen::LDLT<Mat>(ridged).solve(-sp.q0);
    }
    res.x = x;
    res.converged = true;
    return res;
  }

  auto slack = [&](const Vec& x, Vec& s) {
    s.resize(m);
    s.head(m_lin) = sp.d - sp.C * x;
    for (int j = 0; j < m_quad; ++j) {
      const auto& qc = sp.quad[static_cast<std::size_t>(j)];
      s[m_lin + j] = qc.rhs - x.dot(qc.P * x) - qc.q.dot(x);
    }
  };

  Vec lam = Vec::Constant(m, 1.0);
  Vec s;
  slack(res.x, s);
  for (int i = 0; i < m; ++i) lam[i] = 1.0 / std::max(s[i], 1e-10);

  Vec x = res.x;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    slack(x, s);
    double eta = s.dot(lam);
    double t = kMu * m / std::max(eta, 1e-300);

    Mat jac(m, n);
    jac.topRows(m_lin) = sp.C;
    Mat hess = 2.0 * sp.P0;
    for (int j = 0; j < m_quad; ++j) {
      const auto& qc = sp.quad[static_cast<std::size_t>(j)];
      jac.row(m_lin + j) = (2.0 * qc.P * x + qc.q).transpose();
      hess += lam[m_lin + j] * 2.0 * qc.P;
    }

    Vec g0 = 2.0 * sp.P0 * x + sp.q0;
    Vec r_dual = g0 + jac.transpose() * lam;
    Vec r_cent = lam.cwiseProduct(s) - Vec::Constant(m, 1.0 / t);

    double f0 = objective_value(sp.P0, sp.q0, x);
    double stat = r_dual.lpNorm<Eigen::Infinity>() /
                  std::max(1.0, g0.lpNorm<Eigen::Infinity>());
    if (stat <= opt.tol && eta / m <= opt.tol * std::max(1.0, std::abs(f0))) {
      res.converged = true;
      break;
    }

    Vec lam_over_s = lam.cwiseQuotient(s);
    Mat newton = hess + jac.transpose() * lam_over_s.asDiagonal() * jac;
    Vec rhs = -r_dual + jac.transpose() * r_cent.cwiseQuotient(s);
    Eigen::LDLT<Mat> ldlt(newton);
    Vec dx = ldlt.solve(rhs);
    if (!dx.allFinite()) {
      Mat ridged = newton + 1e-10 * (1.0 + newton.diagonal().cwiseAbs().maxCoeff()) *
                                Mat::Identity(n, n);
      dx = Eigen::LDLT<Mat>(ridged).solve(rhs);
      if (!dx.allFinite()) break;
    }
    Vec dlam = (lam.cwiseProduct(jac * dx) - r_cent).cwiseQuotient(s);

    double alpha = 1.0;
    for (int i = 0; i < m; ++i)
      if (dlam[i] < 0.0) alpha = std::min(alpha, -lam[i] / dlam[i]);
    alpha *= 0.99;

    double r_norm = std::sqrt(r_dual.squaredNorm() + r_cent.squaredNorm());
    bool accepted = false;
    Vec x_new, lam_new, s_new;
    for (int bt = 0; bt < 60; ++bt) {
      x_new = x + alpha * dx;
      lam_new = lam + alpha * dlam;
      slack(x_new, s_new);
      if (s_new.minCoeff() > 0.0) {
        Mat jac_new(m, n);
        jac_new.topRows(m_lin) = sp.C;
        for (int j = 0; j < m_quad; ++j) {
          const auto& qc = sp.quad[static_cast<std::size_t>(j)];
          jac_new.row(m_lin + j) = (2.0 * qc.P * x_new + qc.q).transpose();
        }
        Vec rd_new = 2.0 * sp.P0 * x_new + sp.q0 + jac_new.transpose() * lam_new;
        Vec rc_new = lam_new.cwiseProduct(s_new) - Vec::Constant(m, 1.0 / t);
        double r_new = std::sqrt(rd_new.squaredNorm() + rc_new.squaredNorm());
        if (r_new <= (1.0 - 0.01 * alpha) * r_norm) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // stalled: report the best iterate so far

    x = x_new;
    lam = lam_new;
    res.iterations = iter + 1;
  }

  res.x = x;
  res.lam_lin = lam.head(m_lin);
  if (use_quads) res.lam_quad = lam.tail(m_quad);
  return res;
}

ScaledProblem scale_problem(const QcqpProblem& problem) {
  ScaledProblem sp;
  // A binding row c'x <= d pushes the solution to magnitude ~|d|/max|c|.
  // Solving in units of the largest such reach keeps the iterates, slacks and
  // barrier parameter near unit scale even when tiny coefficients meet large
  // targets; row scales below stay per-row on top of this.
  const int m_lin = static_cast<int>(problem.lin_coeffs.rows());
  double vs = 1.0;
  for (int i = 0; i < m_lin; ++i) {
    double coeff = problem.lin_coeffs.row(i).cwiseAbs().maxCoeff();
    if (coeff == 0.0) continue;
    double reach = std::abs(problem.lin_rhs[i]) / coeff;
    if (std::isfinite(reach)) vs = std::max(vs, reach);
  }
  sp.var_scale = vs;

  sp.obj_scale = std::max({1e-12, vs * vs * problem.P0.cwiseAbs().maxCoeff(),
                           problem.q0.size() > 0 ? vs * problem.q0.cwiseAbs().maxCoeff() : 0.0});
  sp.P0 = vs * vs * problem.P0 / sp.obj_scale;
  sp.q0 = vs * problem.q0 / sp.obj_scale;

  std::vector<int> keep;
  for (int i = 0; i < m_lin; ++i)
    if (problem.lin_coeffs.row(i).cwiseAbs().maxCoeff() > 0.0) keep.push_back(i);
  sp.C.resize(static_cast<int>(keep.size()), problem.dim());
  sp.d.resize(static_cast<int>(keep.size()));
  sp.lin_scale.resize(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    double scale = vs * problem.lin_coeffs.row(keep[i]).cwiseAbs().maxCoeff();
    sp.C.row(static_cast<int>(i)) = vs * problem.lin_coeffs.row(keep[i]) / scale;
    sp.d[static_cast<int>(i)] = problem.lin_rhs[keep[i]] / scale;
    sp.lin_scale[static_cast<int>(i)] = scale;
    sp.lin_origin.push_back(keep[i]);
  }

  sp.quad_scale.resize(static_cast<int>(problem.quad.size()));
  for (std::size_t j = 0; j < problem.quad.size(); ++j) {
    const auto& qc = problem.quad[j];
    double scale = std::max({1e-12, vs * vs * qc.P.cwiseAbs().maxCoeff(),
                             qc.q.size() > 0 ? vs * qc.q.cwiseAbs().maxCoeff() : 0.0,
                             std::abs(qc.rhs)});
    sp.quad.push_back({vs * vs * qc.P / scale, vs * qc.q / scale, qc.rhs / scale});
    sp.quad_scale[static_cast<int>(j)] = scale;
  }
  return sp;
}

void validate_problem(const QcqpProblem& problem) {
  const int n = problem.dim();
  if (problem.P0.cols() != n || problem.q0.size() != n)
    throw std::invalid_argument("qcqp: objective dimension mismatch");
  double p0_scale = 1.0 + problem.P0.cwiseAbs().maxCoeff();
  if ((problem.P0 - problem.P0.transpose()).cwiseAbs().maxCoeff() > 1e-10 * p0_scale)
    throw std::invalid_argument("qcqp: objective matrix not symmetric");
  if (problem.lin_coeffs.rows() != problem.lin_rhs.size())
    throw std::invalid_argument("qcqp: linear row count mismatch");
  if (problem.lin_coeffs.rows() > 0 && problem.lin_coeffs.cols() != n)
    throw std::invalid_argument("qcqp: linear column count mismatch");
  for (const auto& qc : problem.quad) {
    if (qc.P.rows() != n || qc.P.cols() != n || qc.q.size() != n)
      throw std::invalid_argument("qcqp: quadratic constraint dimension mismatch");
    double scale = 1.0 + qc.P.cwiseAbs().maxCoeff();
    if ((qc.P - qc.P.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw std::invalid_argument("qcqp: quadratic constraint matrix not symmetric");
  }
}

// Largest violation of the full constraint set (linear rows and quadratic
// caps) minimized over (x, v): rows become c_i x - v <= d_i and
// x'P_j x + q_j'x - v <= r_j, both convex, so the same interior-point
// iteration applies. The search starts strictly inside by construction
// (v0 above the worst violation at the handed-in point) and v is bounded
// below so the minimization cannot run off to -infinity. A certified
// optimum v* >= 0 proves the capped problem empty; v* < 0 hands back a
// strictly interior point.
bool find_interior_point_full(const ScaledProblem& sp, const Vec& x_seed,
                              const QcqpOptions& opt, Vec& x0,
                              double& violation, bool& certified,
                              int& iterations) {
  const int n = static_cast<int>(sp.P0.rows());
  const int m_lin = static_cast<int>(sp.C.rows());
  const int m_quad = static_cast<int>(sp.quad.size());

  auto max_violation = [&](const Vec& x) {
    double v = -milp::kInf;
    if (m_lin > 0) v = (sp.C * x - sp.d).maxCoeff();
    for (int j = 0; j < m_quad; ++j) {
      const auto& qc = sp.quad[static_cast<std::size_t>(j)];
      v = std::max(v, x.dot(qc.P * x) + qc.q.dot(x) - qc.rhs);
    }
    return v;
  };

  // The handed-in point satisfies the linear rows but may overload the
  // quadratic caps by orders of magnitude, which would start the search at
  // an absurd violation level. Candidate seeds at reduced amplitude (and
  // the origin) keep the starting violation near the data's own scale.
  Vec best_seed = x_seed;
  double seed_viol = max_violation(x_seed);
  double shrink = 1.0;
  for (int j = 0; j < m_quad; ++j) {
    const auto& qc = sp.quad[static_cast<std::size_t>(j)];
    double load = x_seed.dot(qc.P * x_seed) + qc.q.dot(x_seed);
    if (load > std::abs(qc.rhs))
      shrink = std::min(shrink, std::sqrt(std::abs(qc.rhs) / load));
  }
  for (const Vec& cand : {Vec(shrink * x_seed), Vec(Vec::Zero(n))}) {
    double v = max_violation(cand);
    if (v < seed_viol) {
      seed_viol = v;
      best_seed = cand;
    }
  }

  double rhs_mag = 0.0;
  for (int j = 0; j < m_quad; ++j)
    rhs_mag = std::max(rhs_mag, std::abs(sp.quad[static_cast<std::size_t>(j)].rhs));
  double vmax = 1.0 + std::max({m_lin > 0 ? sp.d.cwiseAbs().maxCoeff() : 0.0,
                                rhs_mag, std::abs(seed_viol)});

  ScaledProblem aux;
  // The pure min-v objective has a singular Hessian whenever the constraint
  // gradients span fewer than n+1 directions, which stalls the Newton steps.
  // A tiny Tikhonov term restores strict convexity. It cannot fake
  // feasibility — the certificate below is the iterate's own v, which every
  // constraint sits strictly under — it only biases v* upward by
  // delta*|z*|^2, so only razor-thin interiors can be misread as empty.
  aux.P0 = 1e-10 * Mat::Identity(n + 1, n + 1);
  aux.q0 = Vec::Zero(n + 1);
  aux.q0[n] = 1.0;
  aux.C = Mat::Zero(m_lin + 1, n + 1);
  aux.d.resize(m_lin + 1);
  if (m_lin > 0) {
    aux.C.topLeftCorner(m_lin, n) = sp.C;
    aux.d.head(m_lin) = sp.d;
  }
  aux.C.col(n).setConstant(-1.0);
  aux.d[m_lin] = vmax;  // the last row reads -v <= vmax
  for (int j = 0; j < m_quad; ++j) {
    const auto& qc = sp.quad[static_cast<std::size_t>(j)];
    QuadConstraint padded;
    padded.P = Mat::Zero(n + 1, n + 1);
    padded.P.topLeftCorner(n, n) = qc.P;
    padded.q = Vec::Zero(n + 1);
    padded.q.head(n) = qc.q;
    padded.q[n] = -1.0;
    padded.rhs = qc.rhs;
    aux.quad.push_back(std::move(padded));
  }

  Vec z0(n + 1);
  z0.head(n) = best_seed;
  // Starting v only just above the worst violation leaves one slack near
  // zero against many huge ones, which lands far off the central path and
  // makes the damped Newton steps crawl. A comparable headroom evens out
  // the initial slacks.
  z0[n] = seed_viol + std::max(1.0, std::abs(seed_viol));
  IpmResult ph = run_ipm(aux, z0, /*use_quads=*/true, opt);
  iterations += ph.iterations;
  violation = ph.x[n];
  certified = ph.converged;
  x0 = ph.x.head(n);
  // The iterate is strictly feasible for the lifted problem, so every
  // original constraint sits strictly below this v.
  return violation < -kStrictInterior;
}

// Largest linear violation minimized exactly: an LP over (x, v) with rows
// c_i x - v <= d_i. v is bounded below so the LP always has an optimum;
// hitting that bound just means the interior is at least that deep.
bool find_interior_point(const ScaledProblem& sp, Vec& x0, double& violation) {
  const int n = static_cast<int>(sp.P0.rows());
  if (sp.C.rows() == 0) {
    x0 = Vec::Zero(n);
    violation = -milp::kInf;
    return true;
  }
  double vmax = 1.0 + sp.d.cwiseAbs().maxCoeff();
  milp::MilpModel model;
  for (int j = 0; j < n; ++j) model.add_variable(-milp::kInf, milp::kInf, 0.0);
  int v = model.add_variable(-vmax, milp::kInf, -1.0);
  for (int i = 0; i < sp.C.rows(); ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 0; j < n; ++j)
      if (sp.C(i, j) != 0.0) coeffs.emplace_back(j, sp.C(i, j));
    coeffs.emplace_back(v, -1.0);
    model.add_row(std::move(coeffs), milp::Sense::Le, sp.d[i]);
  }
  milp::LpSolution lp = milp::solve_lp(model);
  if (lp.status != milp::LpStatus::Optimal)
    throw std::runtime_error("qcqp: interior-point search LP failed");
  violation = lp.x[v];
  x0 = lp.x.head(n);
  return violation < -kStrictInterior;
}

}  // namespace

QcqpSolution solve_qcqp(const QcqpProblem& problem, const QcqpOptions& options) {
  validate_problem(problem);
  QcqpSolution out;
  out.lambda_lin = Vec::Zero(problem.lin_coeffs.rows());
  out.lambda_quad = Vec::Zero(static_cast<int>(problem.quad.size()));

  // A row with no coefficients is either vacuous or a contradiction.
  for (int i = 0; i < problem.lin_coeffs.rows(); ++i) {
    if (problem.lin_coeffs.row(i).cwiseAbs().maxCoeff() == 0.0 &&
        problem.lin_rhs[i] < 0.0) {
      out.status = SolveStatus::Infeasible;
      out.phase1_violation = -problem.lin_rhs[i];
      return out;
    }
  }

  ScaledProblem sp = scale_problem(problem);

  Vec x0;
  double violation = 0.0;
  if (!find_interior_point(sp, x0, violation)) {
    out.status = SolveStatus::Infeasible;
    out.phase1_violation = std::max(violation, 0.0);
    return out;
  }

  IpmResult uncapped = run_ipm(sp, x0, /*use_quads=*/false, options);
  out.iterations = uncapped.iterations;

  auto fill_lambdas = [&](const IpmResult& res, bool with_quads) {
    out.lambda_lin.setZero();
    for (std::size_t i = 0; i < sp.lin_origin.size(); ++i)
      out.lambda_lin[sp.lin_origin[i]] =
          res.lam_lin[static_cast<int>(i)] * sp.obj_scale / sp.lin_scale[static_cast<int>(i)];
    out.lambda_quad.setZero();
    if (with_quads)
      for (int j = 0; j < out.lambda_quad.size(); ++j)
        out.lambda_quad[j] = res.lam_quad[j] * sp.obj_scale / sp.quad_scale[j];
  };

  auto finalize = [&](const Vec& z, bool converged) {
    out.x = sp.var_scale * z;
    out.objective = objective_value(problem.P0, problem.q0, out.x);
    out.residuals = verify_kkt(problem, out.x, out.lambda_lin, out.lambda_quad);
    out.status = converged ? SolveStatus::Ok : SolveStatus::MaxIterations;
  };

  if (problem.quad.empty()) {
    fill_lambdas(uncapped, false);
    finalize(uncapped.x, uncapped.converged);
    return out;
  }

  // The quadratic caps are screened at the linear-only optimum. When they
  // hold there the caps are slack at the true optimum too (the linear-only
  // objective is a lower bound met by a cap-respecting point), so the
  // uncapped answer stands, at most polished. When a cap is violated the
  // capped optimum is a different point: restart from a strictly interior
  // point of the full set, or certify the set empty.
  out.uncapped_quad_values.resize(static_cast<int>(problem.quad.size()));
  double worst = -milp::kInf;
  bool strictly_inside = true;
  const Vec x_unc = sp.var_scale * uncapped.x;
  for (std::size_t j = 0; j < problem.quad.size(); ++j) {
    const auto& qc = problem.quad[j];
    double value = x_unc.dot(qc.P * x_unc) + qc.q.dot(x_unc);
    out.uncapped_quad_values[static_cast<int>(j)] = value;
    double scaled_excess = (value - qc.rhs) / sp.quad_scale[static_cast<int>(j)];
    worst = std::max(worst, scaled_excess);
    if (scaled_excess > -kStrictInterior) strictly_inside = false;
  }
  if (worst > kCapTol) {
    Vec x_full;
    double full_viol = 0.0;
    bool certified = false;
    bool inside = find_interior_point_full(sp, x0, options, x_full, full_viol,
                                           certified, out.iterations);
    if (!inside) {
      fill_lambdas(uncapped, false);
      out.x = x_unc;
      out.objective = objective_value(problem.P0, problem.q0, out.x);
      out.residuals = verify_kkt(problem, out.x, out.lambda_lin, out.lambda_quad);
      out.status = certified ? SolveStatus::Infeasible : SolveStatus::MaxIterations;
      out.phase1_violation = std::max(full_viol, 0.0);
      return out;
    }
    IpmResult capped = run_ipm(sp, x_full, /*use_quads=*/true, options);
    out.iterations += capped.iterations;
    fill_lambdas(capped, true);
    finalize(capped.x, capped.converged);
    if (!capped.converged &&
        out.residuals.within(std::max(options.tol * 10.0, 1e-6)))
      out.status = SolveStatus::Ok;
    return out;
  }
  if (!uncapped.converged || !strictly_inside) {
    fill_lambdas(uncapped, false);
    finalize(uncapped.x, uncapped.converged);
    return out;
  }

  IpmResult polished = run_ipm(sp, uncapped.x, /*use_quads=*/true, options);
  out.iterations += polished.iterations;
  if (polished.converged) {
    fill_lambdas(polished, true);
    finalize(polished.x, true);
    return out;
  }
  // Polish stalled; the screened uncapped point is still valid with zero
  // multipliers on the caps.
  fill_lambdas(uncapped, false);
  finalize(uncapped.x, uncapped.converged);
  if (out.residuals.within(std::max(options.tol * 10.0, 1e-6)))
    out.status = SolveStatus::Ok;
  return out;
}

KktResiduals verify_kkt(const QcqpProblem& problem, const Vec& x,
                        const Vec& lambda_lin, const Vec& lambda_quad) {
  KktResiduals res;
  Vec g0 = 2.0 * problem.P0 * x + problem.q0;
  double denom0 = std::max(1.0, g0.lpNorm<Eigen::Infinity>());
  Vec lagrangian = g0;
  if (problem.lin_coeffs.rows() > 0)
    lagrangian += problem.lin_coeffs.transpose() * lambda_lin;
  for (std::size_t j = 0; j < problem.quad.size(); ++j) {
    const auto& qc = problem.quad[j];
    lagrangian += lambda_quad[static_cast<int>(j)] * (2.0 * qc.P * x + qc.q);
  }
  res.stationarity = lagrangian.lpNorm<Eigen::Infinity>() / denom0;

  double f0 = x.dot(problem.P0 * x) + problem.q0.dot(x);
  double obj_denom = std::max(1.0, std::abs(f0));
  for (int i = 0; i < problem.lin_coeffs.rows(); ++i) {
    double fi = problem.lin_coeffs.row(i).dot(x) - problem.lin_rhs[i];
    double scale = std::max({1.0, problem.lin_coeffs.row(i).cwiseAbs().maxCoeff(),
                             std::abs(problem.lin_rhs[i])});
    res.primal = std::max(res.primal, fi / scale);
    res.complementarity =
        std::max(res.complementarity, std::abs(lambda_lin[i] * fi) / obj_denom);
  }
  for (std::size_t j = 0; j < problem.quad.size(); ++j) {
    const auto& qc = problem.quad[j];
    double fj = x.dot(qc.P * x) + qc.q.dot(x) - qc.rhs;
    double scale = std::max(1.0, std::abs(qc.rhs));
    res.primal = std::max(res.primal, fj / scale);
    res.complementarity = std::max(
        res.complementarity, std::abs(lambda_quad[static_cast<int>(j)] * fj) / obj_denom);
  }
  res.primal = std::max(res.primal, 0.0);

  double min_lambda = 0.0;
  if (lambda_lin.size() > 0) min_lambda = std::min(min_lambda, lambda_lin.minCoeff());
  if (lambda_quad.size() > 0) min_lambda = std::min(min_lambda, lambda_quad.minCoeff());
  res.dual = std::max(0.0, -min_lambda);
  return res;
}

}  // namespace cibeam
