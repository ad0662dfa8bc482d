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

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pmecc {

// Splits [0, count) into `threads` contiguous chunks with fixed boundaries and
// runs fn(begin, end, chunk) on each. Chunk boundaries depend only on count and
// threads, so per-chunk results merged in chunk order are reproducible.
template <typename Fn>
void parallel_chunks(std::size_t count, int threads, Fn&& fn) {
  const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1 || count < 2 * t) {
    fn(std::size_t{0}, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t c = 0; c < t; ++c) {
    const std::size_t b = count * c / t;
    const std::size_t e = count * (c + 1) / t;
    pool.emplace_back([&fn, b, e, c] { fn(b, e, static_cast<int>(c)); });
  }
  for (auto& th : pool) th.join();
}

inline int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace pmecc
