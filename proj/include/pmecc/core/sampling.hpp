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

#pragma once

#include <cstdint>
#include <vector>

namespace pmecc {

// Van der Corput radical inverse of `index` in `base`.
double radical_inverse(std::uint64_t index, int base);

// First `count` primes (2, 3, 5, ...).
std::vector<int> first_primes(int count);

struct BallSampleSpec {
  int full_count = 10000;    // full-dimensional points
  int planar_count = 10000;  // per coordinate pair
  int ray_radii = 20;        // radii per axis / diagonal ray
};

// Deterministic low-discrepancy sample of the punctured closed unit ball.
// Coordinates are rounded to multiples of 2^-40 so that every point is an
// exact dyadic rational; the seed offsets the Halton index.
std::vector<std::vector<double>> unit_ball_samples(int n, std::uint64_t seed,
                                                   const BallSampleSpec& spec = {});

// Points on the unit sphere (Halton directions, normalized).
std::vector<std::vector<double>> unit_sphere_samples(int n, int count, std::uint64_t seed);

// Radii in [lo, hi], Halton-spread, for radial profile sampling.
std::vector<double> radial_samples(double lo, double hi, int count);

}  // namespace pmecc
