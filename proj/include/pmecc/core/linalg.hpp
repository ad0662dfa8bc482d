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

#include <vector>

namespace pmecc {

// Dense symmetric matrix, row-major, for the small Hessians used here.
template <typename T>
struct SymMatrixT {
  int n = 0;
  std::vector<T> a;

  SymMatrixT() = default;
  explicit SymMatrixT(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, T(0)) {}
  T& operator()(int i, int j) { return a[i * n + j]; }
  const T& operator()(int i, int j) const { return a[i * n + j]; }
};

using SymMatrix = SymMatrixT<double>;

// Eigenvalues by cyclic Jacobi rotations, sorted descending.
std::vector<double> jacobi_eigenvalues(SymMatrix m, double tol = 1e-12, int max_sweeps = 100);
std::vector<long double> jacobi_eigenvalues(SymMatrixT<long double> m, long double tol = 1e-15L,
                                            int max_sweeps = 100);

// Largest Gershgorin upper end: max_i (a_ii + sum_{j!=i} |a_ij|).
double gershgorin_upper(const SymMatrix& m);

// Determinant of the leading j x j block by Laplace expansion (j small).
double leading_minor(const SymMatrix& m, int j);

double max_asymmetry(const SymMatrix& m);

}  // namespace pmecc
