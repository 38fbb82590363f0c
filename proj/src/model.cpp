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

#include "cibeam/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cibeam {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

}  // namespace

Complex psk_symbol(int m, int M) {
  if (M < 1) throw std::domain_error("psk_symbol: modulation order must be >= 1");
  if (m < 0 || m >= M)
    throw std::domain_error("psk_symbol: index " + std::to_string(m) +
                            " outside [0, " + std::to_string(M) + ")");
  // Quadrantal points come from a table and the rest from a first-quadrant
  // angle rotated by an exact multiple of pi/2, so symmetric constellation
  // points have bit-identical components.
  long q4 = 4L * m;
  if (q4 % M == 0) {
    switch ((q4 / M) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  if (M % 4 == 0) {
    int quarter = M / 4;
    int q = m / quarter;
    int rem = m % quarter;
    double phi = 2.0 * kPi * rem / M;
    double c = std::cos(phi);
    double s = std::sin(phi);
    switch (q) {
      case 0: return {c, s};
      case 1: return {-s, c};
      case 2: return {-c, -s};
      default: return {s, -c};
    }
  }
  double phi = 2.0 * kPi * m / M;
  return {std::cos(phi), std::sin(phi)};
}

int detect_psk(Complex y, int M) {
  if (M < 1) throw std::domain_error("detect_psk: modulation order must be >= 1");
  if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
    throw std::domain_error("detect_psk: non-finite sample");
  int best = 0;
  double best_corr = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < M; ++m) {
    Complex p = psk_symbol(m, M);
    double corr = y.real() * p.real() + y.imag() * p.imag();
    if (corr > best_corr) {
      best_corr = corr;
      best = m;
    }
  }
  return best;
}

SymbolVector make_symbols(const std::vector<int>& indices, int modulation_order) {
  SymbolVector sv;
  sv.modulation_order = modulation_order;
  sv.indices = indices;
  sv.values.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k)
    sv.values[static_cast<Eigen::Index>(k)] = psk_symbol(indices[k], modulation_order);
  return sv;
}

CiGeometry make_ci_geometry(int modulation_order, const Vec& margins) {
  if (modulation_order < 2)
    throw std::invalid_argument("ci geometry: modulation order must be >= 2");
  CiGeometry geo;
  geo.theta = kPi / modulation_order;
  geo.halfplane = (modulation_order == 2);
  if (geo.halfplane) {
    geo.tan_theta = 0.0;
    geo.gamma = margins;  // sin(pi/2) == 1
    return geo;
  }
  // tan(pi/4) evaluates to 1 - 2^-53 in double precision; pin the exact
  // value so quadrature-phase constraint rows have coefficient 1.
  geo.tan_theta = (modulation_order == 4) ? 1.0 : std::tan(geo.theta);
  double sin_theta = std::sin(geo.theta);
  geo.gamma = margins / sin_theta;
  return geo;
}

CVec received_nominal(const ChannelSet& channels, const AnalogPrecoderSet& analog,
                      const std::vector<CVec>& digital) {
  int num_bs = channels.num_bs();
  if (analog.num_bs() != num_bs || static_cast<int>(digital.size()) != num_bs)
    throw std::invalid_argument("received_nominal: station count mismatch");
  CVec y = CVec::Zero(channels.num_users());
  for (int g = 0; g < num_bs; ++g) {
    const CMat& h = channels.per_bs[g];
    const CMat& a = analog.per_bs[g];
    if (h.rows() != a.rows())
      throw std::invalid_argument("received_nominal: antenna count mismatch at station " +
                                  std::to_string(g));
    if (a.cols() != digital[g].size())
      throw std::invalid_argument("received_nominal: digital vector size mismatch at station " +
                                  std::to_string(g));
    if (a.cols() == 0) continue;
    y += h.transpose() * (a * digital[g]);
  }
  return y;
}

double ci_slack(Complex y, Complex s, double gamma, double theta) {
  Complex yhat = std::conj(s) * y;
  if (theta >= kHalfPi) return yhat.real() - gamma;
  return (yhat.real() - gamma) * std::tan(theta) - std::abs(yhat.imag());
}

PowerReport transmit_power(const AnalogPrecoderSet& analog,
                           const std::vector<CVec>& digital) {
  int num_bs = analog.num_bs();
  if (static_cast<int>(digital.size()) != num_bs)
    throw std::invalid_argument("transmit_power: station count mismatch");
  PowerReport report;
  report.per_bs_w = Vec::Zero(num_bs);
  for (int g = 0; g < num_bs; ++g) {
    const CMat& a = analog.per_bs[g];
    if (a.cols() != digital[g].size())
      throw std::invalid_argument("transmit_power: digital vector size mismatch at station " +
                                  std::to_string(g));
    if (a.cols() == 0) continue;
    report.per_bs_w[g] = (a * digital[g]).squaredNorm();
  }
  report.total_w = report.per_bs_w.sum();
  return report;
}

}  // namespace cibeam
