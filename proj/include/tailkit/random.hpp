// Copyright 2026 The Tailkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace tailkit {

/// SplitMix64 (Steele, Lea & Flood 2014). Every random decision in the
/// library draws from this stream, and every derived quantity below is
/// defined bit-exactly so plans reproduce across platforms and languages:
///
///   next():        state += 0x9E3779B97F4A7C15; z = state;
///                  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///                  z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///                  return z ^ (z >> 31);
///   uniform01():   (next() >> 11) * 2^-53, in [0, 1)
///   below(n):      Lemire's multiply-shift with rejection, in [0, n)
///
/// The standard <random> distributions are deliberately not used; their
/// algorithms are implementation-defined.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal via Marsaglia's polar method.
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 uses the
  /// U^(1/shape) boost.
  double gamma(double shape);

  /// Beta(a, b) as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
  double beta(double a, double b);

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle: for i from size-1 down to 1, swap
/// items[i] with items[below(i + 1)].
template <typename T>
void shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace tailkit
