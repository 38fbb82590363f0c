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

#ifndef CIBEAM_RNG_HPP_
#define CIBEAM_RNG_HPP_

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cibeam {

// splitmix64 finalizer. Good avalanche, cheap, and stable across platforms;
// used only to derive stream seeds, never as the sampling engine.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Folds an ordered list of labels into one seed. Position-salted so that
// mix_seed({a, b}) != mix_seed({b, a}) and trailing zeros still matter.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  std::uint64_t salt = 1;
  for (std::uint64_t p : parts) {
    h = mix64(h ^ (p + 0x9e3779b97f4a7c15ULL * salt));
    ++salt;
  }
  return h;
}

// Deterministic sampling stream. All distributions are built from the raw
// mt19937_64 output (which the standard pins down bit-exactly), so results
// are reproducible across compilers and standard libraries. Every sampler
// consumes a fixed number of engine draws regardless of the values drawn,
// except rejection loops which are documented at their call sites.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution. One engine draw.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi). One engine draw.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). One engine draw; the (negligible) modulo
  // bias of the float path is traded for a fixed draw count.
  int uniform_int(int n) {
    int v = static_cast<int>(uniform() * n);
    return v < n ? v : n - 1;
  }

  // Circularly symmetric complex Gaussian with total variance `variance`
  // (variance/2 per real component). Box-Muller without caching: exactly
  // two engine draws per call, so streams stay alignable.
  std::complex<double> complex_gaussian(double variance) {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1)) * std::sqrt(variance * 0.5);
    double phi = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cibeam

#endif  // CIBEAM_RNG_HPP_
