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
// Deterministic random draws. mt19937_64's output stream is fully specified
// by the standard, but std::*_distribution mappings are not, so the mapping
// from raw 64-bit words to uniforms/normals/subsets is spelled out here and
// golden tests may pin the results.
//

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rsm/types.hpp"

namespace rsm {

// SplitMix64 finalizer; used to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-trial seed derivation: splittable, so adding trials never perturbs
// earlier ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// FNV-1a, for mixing tag strings (selector/attacker names) into seeds.
inline std::uint64_t hash_tag(const std::string& tag) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : tag) h = (h ^ c) * 0x100000001B3ULL;
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound); bound > 0. Rejection-free modulo mapping: the
  // bias is irrelevant at the bounds used here and the mapping is fixed.
  std::uint64_t next_below(std::uint64_t bound) {
    return engine_() % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  // Standard normal via Box-Muller; draws two uniforms per pair and caches
  // the spare, so call order matters and is deterministic.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Uniform k-subset of `pool` by partial Fisher-Yates over a copy sorted in
  // canonical order; the result is returned canonically sorted.
  ElementSet sample_subset(const ElementSet& pool, int k) {
    std::vector<GlobalId> items = pool;
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n) {
      throw ArgumentError("sample_subset: k out of range");
    }
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(items[i], items[j]);
    }
    ElementSet out(items.begin(), items.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rsm
