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

#include "pmecc/core/jet.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace pmecc {

namespace {

void enumerate(int dim, int var, int budget, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (var == dim) {
    out.emplace_back(cur);
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    cur[var] = e;
    enumerate(dim, var + 1, budget - e, cur, out);
  }
  cur[var] = 0;
}

std::unique_ptr<JetLayout> build_layout(int dim) {
  auto L = std::make_unique<JetLayout>();
  L->dim = dim;
  std::vector<int> cur(dim, 0);
  enumerate(dim, 0, kJetOrder, cur, L->indices);
  std::sort(L->indices.begin(), L->indices.end(), MonomialOrder{});
  for (const auto& idx : L->indices) {
    L->orders.push_back(idx.order());
    L->factorials.push_back(idx.factorial());
  }
  const int count = static_cast<int>(L->indices.size());
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      if (L->orders[a] + L->orders[b] > kJetOrder) continue;
      L->products.push_back({a, b, L->find(L->indices[a] + L->indices[b])});
    }
  }
  L->shift.assign(dim, std::vector<int>(count, -1));
  for (int v = 0; v < dim; ++v) {
    for (int k = 0; k < count; ++k) {
      if (L->orders[k] < kJetOrder) L->shift[v][k] = L->find(L->indices[k] + MultiIndex::unit(dim, v));
    }
  }
  return L;
}

}  // namespace

int JetLayout::find(const MultiIndex& idx) const {
  if (idx.order() > kJetOrder) return -1;
  auto it = std::lower_bound(indices.begin(), indices.end(), idx, MonomialOrder{});
  if (it == indices.end() || !(*it == idx)) return -1;
  return static_cast<int>(it - indices.begin());
}

const JetLayout& JetLayout::get(int dim) {
  if (dim < 1 || dim > 12) {
    throw Error(ErrorKind::kInvalidArgument, "jet dimension must lie in [1, 12]");
  }
  static std::mutex mu;
  static std::map<int, std::unique_ptr<JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[dim];
  if (!slot) slot = build_layout(dim);
  return *slot;
}

std::string format_point(const std::vector<double>& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

Jet<Surd> jet_from_poly(const Poly& p, const std::vector<Rational>& x0) {
  if (static_cast<int>(x0.size()) != p.dimension()) {
    throw Error(ErrorKind::kDimensionMismatch, "jet base point length differs from dimension");
  }
  std::vector<double> base;
  for (const auto& q : x0) base.push_back(q.get_d());
  Jet<Surd> out(p.dimension(), base);
  const JetLayout& L = out.layout();
  for (std::size_t k = 0; k < L.indices.size(); ++k) {
    Surd d = evaluate(derive(p, L.indices[k]), x0);
    out.coefficient_at(k) = d / Surd(L.factorials[k]);
  }
  return out;
}

Jet<double> jet_from_poly(const Poly& p, const std::vector<double>& x0) {
  if (static_cast<int>(x0.size()) != p.dimension()) {
    throw Error(ErrorKind::kDimensionMismatch, "jet base point length differs from dimension");
  }
  Jet<double> out(p.dimension(), x0);
  const JetLayout& L = out.layout();
  for (std::size_t k = 0; k < L.indices.size(); ++k) {
    out.coefficient_at(k) = evaluate(derive(p, L.indices[k]), x0) / double(L.factorials[k]);
  }
  return out;
}

}  // namespace pmecc
