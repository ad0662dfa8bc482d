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

#include "pmecc/core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pmecc {

namespace {

template <typename T>
std::vector<T> jacobi_impl(SymMatrixT<T> m, T tol, int max_sweeps) {
  const int n = m.n;
  T scale = 0;
  for (T v : m.a) scale = std::max(scale, std::fabs(v));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    T off = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(m(i, j)));
    }
    if (off <= tol * scale || off == 0) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (m(p, q) == 0) continue;
        const T theta = (m(q, q) - m(p, p)) / (2 * m(p, q));
        const T t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const T c = 1 / std::sqrt(t * t + 1);
        const T s = t * c;
        for (int k = 0; k < n; ++k) {
          const T mkp = m(k, p);
          const T mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const T mpk = m(p, k);
          const T mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        m(p, q) = m(q, p) = 0;
      }
    }
  }
  std::vector<T> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<T>());
  return ev;
}

double laplace(const SymMatrix& m, std::vector<int>& cols, int row, int j) {
  if (row == j) return 1;
  double det = 0;
  int sign = 1;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int col = cols[c];
    if (col < 0) continue;
    const double entry = m(row, col);
    if (entry != 0) {
      cols[c] = -1;
      det += sign * entry * laplace(m, cols, row + 1, j);
      cols[c] = col;
    }
    sign = -sign;  // alternates over the columns still in play
  }
  return det;
}

}  // namespace

std::vector<double> jacobi_eigenvalues(SymMatrix m, double tol, int max_sweeps) {
  return jacobi_impl<double>(std::move(m), tol, max_sweeps);
}

std::vector<long double> jacobi_eigenvalues(SymMatrixT<long double> m, long double tol,
                                            int max_sweeps) {
  return jacobi_impl<long double>(std::move(m), tol, max_sweeps);
}

double gershgorin_upper(const SymMatrix& m) {
  double best = -INFINITY;
  for (int i = 0; i < m.n; ++i) {
    double r = m(i, i);
    for (int j = 0; j < m.n; ++j) {
      if (j != i) r += std::fabs(m(i, j));
    }
    best = std::max(best, r);
  }
  return best;
}

double leading_minor(const SymMatrix& m, int j) {
  std::vector<int> cols(j);
  for (int c = 0; c < j; ++c) cols[c] = c;
  return laplace(m, cols, 0, j);
}

double max_asymmetry(const SymMatrix& m) {
  double d = 0;
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) d = std::max(d, std::fabs(m(i, j) - m(j, i)));
  }
  return d;
}

}  // namespace pmecc
