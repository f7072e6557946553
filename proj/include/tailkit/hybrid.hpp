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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tailkit/dataset.hpp"
#include "tailkit/stats.hpp"

namespace tailkit {

/// Number of synthetic images to inject per class.
struct BalanceTargets {
  std::vector<std::size_t> synth_count;

  friend bool operator==(const BalanceTargets&, const BalanceTargets&) = default;
};

/// `count` images for every class in `classes`; others get 0.
struct FixedPerClass {
  std::size_t count = 0;
  std::vector<std::string> classes;
};

/// Lift every class to the largest instance count.
struct MatchMax {};

/// Explicit class name -> count table; unlisted classes get 0.
struct ManualTargets {
  std::map<std::string, std::size_t> table;
};

using BalanceStrategy = std::variant<FixedPerClass, MatchMax, ManualTargets>;

/// Throws ConfigurationError for class names not in `class_names`.
BalanceTargets balance_targets(const ClassDistribution& d,
                               std::span<const std::string> class_names,
                               const BalanceStrategy& strategy);

inline constexpr std::string_view kSyntheticIdPrefix = "synthetic/";

/// Hybrid manifest: every real entry, followed by the synthetic entries
/// picked for the targets (in synthetic-manifest order, ids prefixed with
/// kSyntheticIdPrefix).
///
/// Classes are served in class order. For class c the candidates are the
/// not-yet-picked synthetic images holding at least one instance of c; a
/// partial Fisher-Yates pass over them picks synth_count(c). An image picked
/// for one class still counts toward every class it contains.
DatasetManifest mix(const DatasetManifest& real, const DatasetManifest& synth,
                    const BalanceTargets& targets, std::uint64_t seed);

struct ProvenanceCounts {
  std::size_t images = 0;
  std::size_t instances = 0;
};

struct ProvenanceSummary {
  std::size_t real = 0;
  std::size_t synthetic = 0;
  std::vector<std::string> class_names;
  std::vector<ProvenanceCounts> real_per_class;
  std::vector<ProvenanceCounts> synthetic_per_class;
};

ProvenanceSummary provenance_summary(const DatasetManifest& m);

}  // namespace tailkit
