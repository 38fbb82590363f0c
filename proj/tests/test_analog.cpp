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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "cibeam/analog.hpp"
#include "cibeam/config_io.hpp"
#include "cibeam/rng.hpp"
#include "cibeam/types.hpp"

namespace cibeam {
namespace {

NetworkConfig two_bs_config(int n0, int r0, int n1, int r1) {
  NetworkConfig cfg;
  BsSpec a, b;
  a.antennas = n0;
  a.rf_chains = r0;
  a.power_budget_w = 1.0;
  b.antennas = n1;
  b.rf_chains = r1;
  b.power_budget_w = 1.0;
  b.bs_class = BsClass::Pico;
  cfg.bs_list = {a, b};
  cfg.users.resize(2);
  cfg.margins = {1e-4};
  return cfg;
}

TEST_SUITE("analog") {

TEST_CASE("resolve_ps_magnitudes defaults to 1/sqrt(antennas) per station") {
  NetworkConfig cfg = two_bs_config(16, 8, 4, 2);
  auto mags = resolve_ps_magnitudes(cfg);
  REQUIRE(mags.size() == 2);
  CHECK(mags[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mags[1] == doctest::Approx(0.5).epsilon(1e-15));

  cfg.ps_magnitude = 0.05;
  mags = resolve_ps_magnitudes(cfg);
  CHECK(mags[0] == 0.05);
  CHECK(mags[1] == 0.05);
}

TEST_CASE("build_dft_codebook column phases step by -2*pi*c/N") {
  NetworkConfig cfg = two_bs_config(4, 4, 2, 2);
  std::vector<double> mags = {1.0, 0.5};
  Codebook book = build_dft_codebook(cfg, mags);
  REQUIRE(book.per_bs.size() == 2);
  CHECK(book.total_columns() == 6);
  // Station-major row ownership: four columns of station 0, then two of 1.
  REQUIRE(book.row_owner.size() == 6);
  CHECK(book.row_owner[0] == 0);
  CHECK(book.row_owner[3] == 0);
  CHECK(book.row_owner[4] == 1);
  CHECK(book.row_owner[5] == 1);

  const CMat& cb = book.per_bs[0];
  REQUIRE(cb.rows() == 4);
  REQUIRE(cb.cols() == 4);
  // Column 1 of a 4-point DFT: [1, -j, -1, j], quadrantal so exact.
  CHECK(cb(0, 1) == Complex(1.0, 0.0));
  CHECK(cb(1, 1) == Complex(0.0, -1.0));
  CHECK(cb(2, 1) == Complex(-1.0, 0.0));
  CHECK(cb(3, 1) == Complex(0.0, 1.0));
  // Column 0 is the all-ones beam.
  for (int n = 0; n < 4; ++n) CHECK(cb(n, 0) == Complex(1.0, 0.0));

  // Every entry has the station magnitude (constant-modulus hardware).
  for (std::size_t g = 0; g < book.per_bs.size(); ++g) {
    const CMat& m = book.per_bs[g];
    for (int c = 0; c < m.cols(); ++c)
      for (int n = 0; n < m.rows(); ++n)
        CHECK(std::abs(m(n, c)) == doctest::Approx(mags[g]).epsilon(1e-14));
  }

  // Distinct columns of one station's book are orthogonal.
  CHECK(std::abs((cb.col(0).adjoint() * cb.col(1)).value()) < 1e-12);
  CHECK(std::abs((cb.col(1).adjoint() * cb.col(3)).value()) < 1e-12);
}

TEST_CASE("build_continuous_analog phases align to the served user's channel") {
  NetworkConfig cfg = two_bs_config(3, 2, 2, 1);
  ChannelSet channels;
  Rng rng(88);
  CMat h0(3, 2), h1(2, 2);
  for (int n = 0; n < 3; ++n)
    for (int k = 0; k < 2; ++k) h0(n, k) = rng.complex_gaussian(1.0);
  for (int n = 0; n < 2; ++n)
    for (int k = 0; k < 2; ++k) h1(n, k) = rng.complex_gaussian(1.0);
  channels.per_bs = {h0, h1};

  RfChainMap chains = RfChainMap::from_config(cfg);
  REQUIRE(chains.total() == 3);
  AssignmentResult assignment;
  assignment.alpha = Mat::Zero(3, 2);
  assignment.alpha(0, 0) = 1.0;  // station 0, chain 0 -> user 0
  assignment.alpha(2, 1) = 1.0;  // station 1, chain 0 -> user 1
  // chain 1 of station 0 left unassigned on purpose

  std::vector<double> mags = resolve_ps_magnitudes(cfg);
  AnalogPrecoderSet analog =
      build_continuous_analog(channels, assignment, chains, mags);

  REQUIRE(analog.num_bs() == 2);
  CHECK(analog.columns(0) == 1);  // the unassigned chain produced no column
  CHECK(analog.columns(1) == 1);
  CHECK(analog.served_user[0] == std::vector<int>{0});
  CHECK(analog.served_user[1] == std::vector<int>{1});

  // Conjugate-phase beamforming turns the projection into the scaled l1 norm.
  Complex proj0 = (h0.col(0).transpose() * analog.per_bs[0].col(0)).value();
  CHECK(proj0.real() ==
        doctest::Approx(mags[0] * h0.col(0).cwiseAbs().sum()).epsilon(1e-12));
  CHECK(std::abs(proj0.imag()) < 1e-12);
  Complex proj1 = (h1.col(1).transpose() * analog.per_bs[1].col(0)).value();
  CHECK(proj1.real() ==
        doctest::Approx(mags[1] * h1.col(1).cwiseAbs().sum()).epsilon(1e-12));
  CHECK(std::abs(proj1.imag()) < 1e-12);

  // Constant modulus across all entries.
  for (int n = 0; n < 3; ++n)
    CHECK(std::abs(analog.per_bs[0](n, 0)) == doctest::Approx(mags[0]).epsilon(1e-14));
}

TEST_CASE("build_codebook_analog copies assigned columns bit-exactly") {
  NetworkConfig cfg = two_bs_config(4, 2, 2, 1);
  std::vector<double> mags = resolve_ps_magnitudes(cfg);
  Codebook book = build_dft_codebook(cfg, mags);

  AssignmentResult assignment;
  assignment.alpha = Mat::Zero(6, 2);
  assignment.alpha(3, 0) = 1.0;  // station 0, code 3 -> user 0
  assignment.alpha(4, 1) = 1.0;  // station 1, code 0 -> user 1

  AnalogPrecoderSet analog = build_codebook_analog(book, assignment, cfg);
  REQUIRE(analog.columns(0) == 1);
  REQUIRE(analog.columns(1) == 1);
  CHECK(analog.per_bs[0].col(0) == book.per_bs[0].col(3));
  CHECK(analog.per_bs[1].col(0) == book.per_bs[1].col(0));
  CHECK(analog.served_user[0] == std::vector<int>{0});
  CHECK(analog.served_user[1] == std::vector<int>{1});
  CHECK(analog.magnitude[0] == doctest::Approx(mags[0]).epsilon(1e-15));
}

TEST_CASE("build_codebook_analog keeps station code order ascending") {
  NetworkConfig cfg = two_bs_config(4, 3, 2, 1);
  std::vector<double> mags = resolve_ps_magnitudes(cfg);
  Codebook book = build_dft_codebook(cfg, mags);
  AssignmentResult assignment;
  assignment.alpha = Mat::Zero(6, 3);
  assignment.alpha(2, 1) = 1.0;  // station 0, code 2 -> user 1
  assignment.alpha(0, 0) = 1.0;  // station 0, code 0 -> user 0
  assignment.alpha(5, 2) = 1.0;  // station 1, code 1 -> user 2
  cfg.users.resize(3);

  AnalogPrecoderSet analog = build_codebook_analog(book, assignment, cfg);
  REQUIRE(analog.columns(0) == 2);
  CHECK(analog.per_bs[0].col(0) == book.per_bs[0].col(0));
  CHECK(analog.per_bs[0].col(1) == book.per_bs[0].col(2));
  CHECK(analog.served_user[0] == std::vector<int>{0, 1});
  CHECK(analog.served_user[1] == std::vector<int>{2});
}

TEST_CASE("build_codebook_analog rejects overloaded stations") {
  NetworkConfig cfg = two_bs_config(4, 1, 2, 1);  // station 0 has 1 chain
  std::vector<double> mags = resolve_ps_magnitudes(cfg);
  Codebook book = build_dft_codebook(cfg, mags);
  AssignmentResult assignment;
  assignment.alpha = Mat::Zero(6, 2);
  assignment.alpha(0, 0) = 1.0;
  assignment.alpha(1, 1) = 1.0;  // two active codes on a one-chain station
  CHECK_THROWS_AS(build_codebook_analog(book, assignment, cfg),
                  std::invalid_argument);
}

}  // TEST_SUITE

}  // namespace
}  // namespace cibeam
