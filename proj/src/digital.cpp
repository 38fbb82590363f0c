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

#include "cibeam/digital.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cibeam/model.hpp"

namespace cibeam {
namespace {

// [[Re M, -Im M], [Im M, Re M]]: the real representation of the complex
// quadratic form b^H M b and of complex matrix-vector products.
Mat real_expand(const CMat& m) {
  Mat out(2 * m.rows(), 2 * m.cols());
  out.topLeftCorner(m.rows(), m.cols()) = m.real();
  out.topRightCorner(m.rows(), m.cols()) = -m.imag();
  out.bottomLeftCorner(m.rows(), m.cols()) = m.imag();
  out.bottomRightCorner(m.rows(), m.cols()) = m.real();
  return out;
}

std::vector<CVec> unstack_digital(const Vec& x, const BlockLayout& layout) {
  std::vector<CVec> digital(layout.offset.size());
  for (std::size_t g = 0; g < layout.offset.size(); ++g) {
    int cols = layout.cols[g];
    CVec b(cols);
    for (int c = 0; c < cols; ++c)
      b[c] = Complex(x[layout.offset[g] + c], x[layout.offset[g] + cols + c]);
    digital[g] = std::move(b);
  }
  return digital;
}

Vec slack_vector(const ChannelSet& channels, const AnalogPrecoderSet& analog,
                 const std::vector<CVec>& digital, const SymbolVector& symbols,
                 const CiGeometry& geometry) {
  CVec y = received_nominal(channels, analog, digital);
  Vec slack(y.size());
  for (int k = 0; k < y.size(); ++k)
    slack[k] = ci_slack(y[k], symbols.values[k], geometry.gamma[k], geometry.theta);
  return slack;
}

}  // namespace

EffectiveChannel effective_channel(const ChannelSet& channels,
                                   const AnalogPrecoderSet& analog) {
  if (channels.num_bs() != analog.num_bs())
    throw std::invalid_argument("effective_channel: station count mismatch");
  EffectiveChannel eff;
  eff.per_bs.reserve(analog.per_bs.size());
  for (int g = 0; g < channels.num_bs(); ++g) {
    const CMat& h = channels.per_bs[static_cast<std::size_t>(g)];
    const CMat& a = analog.per_bs[static_cast<std::size_t>(g)];
    if (h.rows() != a.rows())
      throw std::invalid_argument("effective_channel: antenna count mismatch at station " +
                                  std::to_string(g));
    eff.per_bs.push_back(h.transpose() * a);
  }
  return eff;
}

BlockLayout BlockLayout::from_analog(const AnalogPrecoderSet& analog) {
  BlockLayout layout;
  for (const auto& a : analog.per_bs) {
    layout.offset.push_back(layout.dim);
    layout.cols.push_back(static_cast<int>(a.cols()));
    layout.dim += 2 * static_cast<int>(a.cols());
  }
  return layout;
}

QcqpProblem build_ci_problem(const EffectiveChannel& effective,
                             const AnalogPrecoderSet& analog,
                             const SymbolVector& symbols,
                             const CiGeometry& geometry, const Vec& budgets_w) {
  const int num_bs = analog.num_bs();
  const int users = effective.num_users();
  if (static_cast<int>(symbols.indices.size()) != users)
    throw std::invalid_argument("build_ci_problem: symbol count mismatch");
  if (geometry.gamma.size() != users)
    throw std::invalid_argument("build_ci_problem: margin count mismatch");
  if (budgets_w.size() != 0 && budgets_w.size() != num_bs)
    throw std::invalid_argument("build_ci_problem: budget count mismatch");

  for (int k = 0; k < users; ++k) {
    double reach = 0.0;
    for (int g = 0; g < num_bs; ++g)
      if (effective.per_bs[static_cast<std::size_t>(g)].cols() > 0)
        reach = std::max(reach, effective.per_bs[static_cast<std::size_t>(g)]
                                    .row(k)
                                    .cwiseAbs()
                                    .maxCoeff());
    if (reach == 0.0)
      throw InfeasibleError("ci problem: user " + std::to_string(k) +
                            " has an identically zero effective channel");
  }

  BlockLayout layout = BlockLayout::from_analog(analog);
  QcqpProblem problem;
  problem.P0 = Mat::Zero(layout.dim, layout.dim);
  problem.q0 = Vec::Zero(layout.dim);
  for (int g = 0; g < num_bs; ++g) {
    const CMat& a = analog.per_bs[static_cast<std::size_t>(g)];
    if (a.cols() == 0) continue;
    problem.P0.block(layout.offset[static_cast<std::size_t>(g)],
                     layout.offset[static_cast<std::size_t>(g)],
                     2 * a.cols(), 2 * a.cols()) = real_expand(a.adjoint() * a);
  }

  const int rows_per_user = geometry.halfplane ? 1 : 2;
  problem.lin_coeffs = Mat::Zero(rows_per_user * users, layout.dim);
  problem.lin_rhs.resize(rows_per_user * users);
  for (int k = 0; k < users; ++k) {
    for (int g = 0; g < num_bs; ++g) {
      int cols = layout.cols[static_cast<std::size_t>(g)];
      if (cols == 0) continue;
      int off = layout.offset[static_cast<std::size_t>(g)];
      // Symbol-rotated effective row: z_k = conj(s_k) * y_k is linear in the
      // stacked digital vector through f = conj(s_k) * (h^T A)_k.
      Eigen::RowVectorXcd f =
          std::conj(symbols.values[k]) *
          effective.per_bs[static_cast<std::size_t>(g)].row(k);
      if (geometry.halfplane) {
        // Re(z_k) >= gamma_k
        problem.lin_coeffs.row(k).segment(off, cols) = -f.real();
        problem.lin_coeffs.row(k).segment(off + cols, cols) = f.imag();
      } else {
        double tt = geometry.tan_theta;
        //  Im(z_k) - tan(theta) Re(z_k) <= -gamma_k tan(theta)
        problem.lin_coeffs.row(2 * k).segment(off, cols) = f.imag() - tt * f.real();
        problem.lin_coeffs.row(2 * k).segment(off + cols, cols) =
            f.real() + tt * f.imag();
        // -Im(z_k) - tan(theta) Re(z_k) <= -gamma_k tan(theta)
        problem.lin_coeffs.row(2 * k + 1).segment(off, cols) =
            -f.imag() - tt * f.real();
        problem.lin_coeffs.row(2 * k + 1).segment(off + cols, cols) =
            -f.real() + tt * f.imag();
      }
    }
    if (geometry.halfplane) {
      problem.lin_rhs[k] = -geometry.gamma[k];
    } else {
      problem.lin_rhs[2 * k] = -geometry.gamma[k] * geometry.tan_theta;
      problem.lin_rhs[2 * k + 1] = -geometry.gamma[k] * geometry.tan_theta;
    }
  }

  if (budgets_w.size() == num_bs) {
    for (int g = 0; g < num_bs; ++g) {
      const CMat& a = analog.per_bs[static_cast<std::size_t>(g)];
      if (a.cols() == 0) continue;
      QuadConstraint qc;
      qc.P = Mat::Zero(layout.dim, layout.dim);
      qc.P.block(layout.offset[static_cast<std::size_t>(g)],
                 layout.offset[static_cast<std::size_t>(g)], 2 * a.cols(),
                 2 * a.cols()) = real_expand(a.adjoint() * a);
      qc.q = Vec::Zero(layout.dim);
      qc.rhs = budgets_w[g];
      problem.quad.push_back(std::move(qc));
    }
  }
  return problem;
}

PrecodeSolution solve_digital_ci(const ChannelSet& channels,
                                 const AnalogPrecoderSet& analog,
                                 const SymbolVector& symbols,
                                 const CiGeometry& geometry, const Vec& budgets_w,
                                 const QcqpOptions& options) {
  EffectiveChannel eff = effective_channel(channels, analog);
  QcqpProblem problem = build_ci_problem(eff, analog, symbols, geometry, budgets_w);
  QcqpSolution qs = solve_qcqp(problem, options);

  if (qs.status == SolveStatus::Infeasible) {
    std::string detail;
    if (qs.uncapped_quad_values.size() > 0) {
      detail = "per-station powers without caps:";
      for (int g = 0; g < qs.uncapped_quad_values.size(); ++g)
        detail += " " + std::to_string(qs.uncapped_quad_values[g]) + "W";
    } else {
      detail = "margin constraints admit no interior (residual " +
               std::to_string(qs.phase1_violation) + ")";
    }
    throw InfeasibleError("ci solve: infeasible; " + detail);
  }

  BlockLayout layout = BlockLayout::from_analog(analog);
  PrecodeSolution sol;
  sol.status = qs.status;
  sol.digital = unstack_digital(qs.x, layout);
  PowerReport power = transmit_power(analog, sol.digital);
  sol.per_bs_power_w = power.per_bs_w;
  sol.total_power_w = power.total_w;
  sol.ci_slack_per_user = slack_vector(channels, analog, sol.digital, symbols, geometry);
  sol.solver_iterations = qs.iterations;
  return sol;
}

ZfDesign design_zf(const EffectiveChannel& effective) {
  const int users = effective.num_users();
  int total_cols = 0;
  for (const auto& f : effective.per_bs) total_cols += static_cast<int>(f.cols());
  if (total_cols < users)
    throw InfeasibleError("zf design: " + std::to_string(total_cols) +
                          " digital inputs cannot invert " + std::to_string(users) +
                          " user channels");

  CMat stacked(users, total_cols);
  int col = 0;
  for (const auto& f : effective.per_bs) {
    stacked.middleCols(col, f.cols()) = f;
    col += static_cast<int>(f.cols());
  }

  Eigen::JacobiSVD<CMat> svd(stacked);
  double smax = svd.singularValues()[0];
  double smin = svd.singularValues()[users - 1];
  if (!(smin > 1e-12 * smax))
    throw InfeasibleError("zf design: effective channel is rank deficient");

  CMat gram = stacked * stacked.adjoint();
  CMat inverse = stacked.adjoint() *
                 gram.ldlt().solve(CMat::Identity(users, users));

  ZfDesign design;
  col = 0;
  for (const auto& f : effective.per_bs) {
    design.per_bs.push_back(inverse.middleRows(col, f.cols()));
    col += static_cast<int>(f.cols());
  }
  return design;
}

PrecodeSolution apply_zf(const ZfDesign& design, const AnalogPrecoderSet& analog,
                         const SymbolVector& symbols, const Vec& budgets_w) {
  const int num_bs = analog.num_bs();
  if (static_cast<int>(design.per_bs.size()) != num_bs)
    throw std::invalid_argument("apply_zf: station count mismatch");
  if (budgets_w.size() != num_bs)
    throw std::invalid_argument("apply_zf: one power budget per station required");

  // Unit-gain digital vectors, then the largest common scale that respects
  // every station's budget for this particular symbol draw.
  std::vector<CVec> unit(design.per_bs.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double beta = kInf;
  for (int g = 0; g < num_bs; ++g) {
    unit[static_cast<std::size_t>(g)] =
        design.per_bs[static_cast<std::size_t>(g)] * symbols.values;
    double p_unit = (analog.per_bs[static_cast<std::size_t>(g)] *
                     unit[static_cast<std::size_t>(g)])
                        .squaredNorm();
    if (p_unit > 0.0) beta = std::min(beta, std::sqrt(budgets_w[g] / p_unit));
  }
  if (beta == kInf) beta = 0.0;

  PrecodeSolution sol;
  sol.status = SolveStatus::Ok;
  sol.zf_beta = beta;
  sol.digital.resize(static_cast<std::size_t>(num_bs));
  sol.zf_precoder.reserve(design.per_bs.size());
  for (int g = 0; g < num_bs; ++g) {
    sol.digital[static_cast<std::size_t>(g)] = beta * unit[static_cast<std::size_t>(g)];
    sol.zf_precoder.push_back(design.per_bs[static_cast<std::size_t>(g)]);
  }
  PowerReport power = transmit_power(analog, sol.digital);
  sol.per_bs_power_w = power.per_bs_w;
  sol.total_power_w = power.total_w;
  return sol;
}

PrecodeSolution solve_digital_zf(const ChannelSet& channels,
                                 const AnalogPrecoderSet& analog,
                                 const SymbolVector& symbols, const Vec& budgets_w) {
  return apply_zf(design_zf(effective_channel(channels, analog)), analog, symbols,
                  budgets_w);
}

}  // namespace cibeam
