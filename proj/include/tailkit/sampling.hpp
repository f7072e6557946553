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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailkit/dataset.hpp"

namespace tailkit {

// Epoch planners. Each one is a pure function of (manifest, parameters,
// seed): all randomness comes from a single SplitMix64 stream seeded with
// `seed`, consumed in the order documented on each planner.

enum class Strategy { kBaseline, kRfs, kCas };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view text);

struct EpochPlan {
  Strategy strategy = Strategy::kBaseline;
  std::uint64_t seed = 0;
  std::size_t batch_size = 1;
  // Every batch holds batch_size ids except possibly the last.
  std::vector<std::vector<std::string>> batches;

  std::size_t epoch_length() const;
  std::vector<std::string> flatten() const;

  friend bool operator==(const EpochPlan&, const EpochPlan&) = default;
};

/// Seeded Fisher-Yates permutation of all entry ids, chunked into batches.
EpochPlan baseline_plan(const DatasetManifest& m, std::size_t batch_size, std::uint64_t seed);

/// max(1, sqrt(t / f_c)) for class image-frequency f_c and threshold t.
double repeat_factor(double f_c, double t);

struct RepeatFactorTable {
  // Classes that appear in no image keep factor 1.
  std::vector<double> per_class;
  // Max over the classes present in the image; 1 for unannotated images.
  std::vector<double> per_image;
};

RepeatFactorTable repeat_factors(const DatasetManifest& m, double t);

enum class RepeatRounding {
  // floor(r) copies plus one more with probability frac(r).
  kStochastic,
  // ceil(r) copies.
  kCeil,
};

/// Repeat Factor Sampling. Stream order: one uniform01() draw per image with
/// a fractional factor (stochastic mode, manifest order), then a
/// Fisher-Yates shuffle of the replicated list.
EpochPlan rfs_plan(const DatasetManifest& m, double t, std::size_t batch_size,
                   std::uint64_t seed, RepeatRounding rounding = RepeatRounding::kStochastic);

/// Class-Aware Sampling. Each slot draws a class uniformly with below(C),
/// then an image uniformly with replacement from that class's image list
/// (manifest order) with below(list size). Slots fill batches in draw
/// order. `epoch_length` defaults to the number of entries.
EpochPlan cas_plan(const DatasetManifest& m, std::size_t batch_size,
                   std::optional<std::size_t> epoch_length, std::uint64_t seed);

/// Per-class image lists used by cas_plan, in manifest order.
std::vector<std::vector<std::size_t>> images_per_class(const DatasetManifest& m);

}  // namespace tailkit
