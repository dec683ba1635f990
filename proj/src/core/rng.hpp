// Copyright 2026 The Spectra Authors.
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

#include <cstdint>
#include <string>
#include <vector>

namespace spectra {

// Counter-based deterministic randomness. Every random decision in an
// auction is keyed by (seed, context string, counter), so a decision never
// depends on how many random draws happened elsewhere in the run. std::hash
// is implementation-defined and therefore avoided; FNV-1a plus a SplitMix64
// finalizer is stable across platforms and compilers.

inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// A stream of pseudo-random words derived from a keyed state.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, const std::string& context,
               std::uint64_t counter)
      : state_(splitmix64(seed ^ splitmix64(fnv1a64(context) + counter))) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }

  // Uniform index in [0, n). Rejection sampling removes modulo bias so the
  // tie-break frequency tests hold even for awkward n.
  std::size_t next_index(std::size_t n) {
    if (n <= 1) return 0;
    std::uint64_t bound = n;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t word = next();
    while (word >= limit) word = next();
    return static_cast<std::size_t>(word % bound);
  }

  // Fisher-Yates shuffle with draws taken from this stream.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = next_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace spectra
