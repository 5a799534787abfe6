// Copyright 2026 The Svetlichny Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace svetlichny {

/// Splits [0, count) into contiguous chunks, runs `work(begin, end)` on each and
/// returns the partial results in chunk order. Callers reduce in that order, so the
/// outcome never depends on the thread count.
template <typename Work>
auto parallel_chunks(std::uint64_t count, unsigned threads, Work work) {
  using Partial = decltype(work(std::uint64_t{0}, std::uint64_t{0}));
  unsigned n = std::max(1u, threads);
  if (count < 2 * static_cast<std::uint64_t>(n)) n = 1;
  std::vector<Partial> partials(n);
  if (n == 1) {
    partials[0] = work(0, count);
    return partials;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t begin = count * i / n;
    std::uint64_t end = count * (i + 1) / n;
    pool.emplace_back([&partials, &work, i, begin, end] { partials[i] = work(begin, end); });
  }
  for (auto &t : pool) t.join();
  return partials;
}

}  // namespace svetlichny
