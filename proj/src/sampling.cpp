// Copyright 2026 The pmecc Authors
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

#include "pmecc/core/sampling.hpp"

#include <cmath>

#include "pmecc/core/error.hpp"

namespace pmecc {

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

std::vector<int> first_primes(int count) {
  std::vector<int> p;
  for (int c = 2; static_cast<int>(p.size()) < count; ++c) {
    bool prime = true;
    for (int q : p) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) p.push_back(c);
  }
  return p;
}

namespace {

constexpr double kGrid = 1099511627776.0;  // 2^40

double dyadic(double x) { return std::nearbyint(x * kGrid) / kGrid; }

double norm2(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

// Keeps x inside the closed unit ball after rounding.
void round_into_ball(std::vector<double>& x) {
  for (double& v : x) v = dyadic(v);
  while (norm2(x) > 1) {
    for (double& v : x) v = dyadic(v * (1 - 1.0 / 1073741824.0));
  }
}

}  // namespace

std::vector<std::vector<double>> unit_ball_samples(int n, std::uint64_t seed,
                                                   const BallSampleSpec& spec) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "sample dimension must be positive");
  std::vector<std::vector<double>> out;
  const std::vector<int> primes = first_primes(n);
  const std::uint64_t offset = 1 + seed * 1000003ULL;

  // Full-dimensional Halton points by rejection.
  for (std::uint64_t i = offset; static_cast<int>(out.size()) < spec.full_count; ++i) {
    std::vector<double> x(n);
    for (int d = 0; d < n; ++d) x[d] = 2 * radical_inverse(i, primes[d]) - 1;
    const double r2 = norm2(x);
    if (r2 > 1 || r2 == 0) continue;
    round_into_ball(x);
    if (norm2(x) > 0) out.push_back(std::move(x));
  }

  // Planar points in every coordinate pair.
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      int taken = 0;
      for (std::uint64_t i = offset; taken < spec.planar_count; ++i) {
        const double u = 2 * radical_inverse(i, 2) - 1;
        const double v = 2 * radical_inverse(i, 3) - 1;
        if (u * u + v * v > 1 || (u == 0 && v == 0)) continue;
        std::vector<double> x(n, 0.0);
        x[p] = u;
        x[q] = v;
        round_into_ball(x);
        if (norm2(x) == 0) continue;
        out.push_back(std::move(x));
        ++taken;
      }
    }
  }

  // Axis and diagonal rays, geometrically spaced radii down to ~1/700.
  std::vector<std::vector<double>> dirs;
  for (int d = 0; d < n; ++d) {
    for (int s : {1, -1}) {
      std::vector<double> e(n, 0.0);
      e[d] = s;
      dirs.push_back(e);
    }
  }
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<double> e(n);
    for (int d = 0; d < n; ++d) e[d] = ((mask >> d) & 1 ? -1.0 : 1.0) / std::sqrt(double(n));
    dirs.push_back(e);
  }
  for (const auto& e : dirs) {
    for (int k = 0; k < spec.ray_radii; ++k) {
      const double r = std::pow(2.0, -0.5 * k);
      std::vector<double> x(n);
      for (int d = 0; d < n; ++d) x[d] = r * e[d];
      round_into_ball(x);
      if (norm2(x) > 0) out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<std::vector<double>> unit_sphere_samples(int n, int count, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  const std::vector<int> primes = first_primes(n);
  for (std::uint64_t i = 1 + seed * 1000003ULL; static_cast<int>(out.size()) < count; ++i) {
    std::vector<double> x(n);
    for (int d = 0; d < n; ++d) x[d] = 2 * radical_inverse(i, primes[d]) - 1;
    const double r2 = norm2(x);
    if (r2 > 1 || r2 < 1e-6) continue;
    const double r = std::sqrt(r2);
    for (double& v : x) v /= r;
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<double> radial_samples(double lo, double hi, int count) {
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i) {
    r[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return r;
}

}  // namespace pmecc
