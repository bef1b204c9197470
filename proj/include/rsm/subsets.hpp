// Copyright 2026 The Authors.
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

//
// Deterministic subset enumeration over canonical element sets.
//

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "rsm/types.hpp"

namespace rsm {

// C(n, k), saturating instead of overflowing.
inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    if (result > std::numeric_limits<std::int64_t>::max() / (n - k + i)) {
      return std::numeric_limits<std::int64_t>::max();
    }
    result = result * (n - k + i) / i;
  }
  return result;
}

// Sum of C(n, i) for i = 0..k, saturating.
inline std::int64_t count_subsets_up_to(int n, int k) {
  std::int64_t total = 0;
  for (int i = 0; i <= k; ++i) {
    std::int64_t c = binomial(n, i);
    if (total > std::numeric_limits<std::int64_t>::max() - c) {
      return std::numeric_limits<std::int64_t>::max();
    }
    total += c;
  }
  return total;
}

// All size-k subsets of `pool`, in lexicographic index order. The callback
// receives each subset in canonical order.
template <typename Fn>
void for_each_subset_of_size(const ElementSet& pool, int k, Fn&& fn) {
  const int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  ElementSet subset(k);
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
    fn(static_cast<const ElementSet&>(subset));
    if (k == 0) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// All subsets of size <= k, by increasing size.
template <typename Fn>
void for_each_subset_up_to(const ElementSet& pool, int k, Fn&& fn) {
  for (int size = 0; size <= k && size <= static_cast<int>(pool.size());
       ++size) {
    for_each_subset_of_size(pool, size, fn);
  }
}

// All 2^n subsets.
template <typename Fn>
void for_each_subset(const ElementSet& pool, Fn&& fn) {
  for_each_subset_up_to(pool, static_cast<int>(pool.size()), fn);
}

}  // namespace rsm
