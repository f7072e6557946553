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
#include <span>
#include <string>
#include <vector>

#include "tailkit/dataset.hpp"

namespace tailkit {

/// Per-class instance and image counts over a manifest.
struct ClassDistribution {
  std::vector<std::size_t> instance_count;
  // Images holding at least one instance of the class.
  std::vector<std::size_t> image_count;
  std::size_t total_images = 0;
  std::size_t total_instances = 0;

  std::size_t num_classes() const { return instance_count.size(); }

  friend bool operator==(const ClassDistribution&, const ClassDistribution&) = default;
};

ClassDistribution class_distribution(const DatasetManifest& m);

struct ClassImbalance {
  std::size_t class_id = 0;
  std::string name;
  std::size_t instances = 0;
  std::size_t images = 0;
  // image_count / total_images
  double image_frequency = 0.0;
};

struct ImbalanceReport {
  // Sorted by descending instance count; ties keep class order.
  std::vector<ClassImbalance> classes;
  // max instance count / min nonzero instance count
  double imbalance_ratio = 0.0;
  std::size_t total_images = 0;
  std::size_t total_instances = 0;
};

/// Throws ValidationError when every class count is zero.
ImbalanceReport imbalance_report(const ClassDistribution& d,
                                 std::span<const std::string> class_names);

/// Aligned-column rendering of the report.
std::string format_imbalance_table(const ImbalanceReport& report);

}  // namespace tailkit
