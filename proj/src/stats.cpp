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
#include "tailkit/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace tailkit {

ClassDistribution class_distribution(const DatasetManifest& m) {
  const std::size_t n = m.num_classes();
  ClassDistribution d;
  d.instance_count.assign(n, 0);
  d.image_count.assign(n, 0);
  d.total_images = m.entries.size();

  std::vector<char> present(n);
  for (const ImageEntry& e : m.entries) {
    std::fill(present.begin(), present.end(), 0);
    for (const Annotation& a : e.annotations) {
      if (a.class_id >= n) {
        throw ValidationError("entry \"" + e.id + "\": class id out of range", e.id);
      }
      ++d.instance_count[a.class_id];
      present[a.class_id] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) d.image_count[c] += present[c];
    d.total_instances += e.annotations.size();
  }
  return d;
}

ImbalanceReport imbalance_report(const ClassDistribution& d,
                                 std::span<const std::string> class_names) {
  if (class_names.size() != d.num_classes()) {
    throw ArgumentError("class name count does not match the distribution");
  }
  std::size_t max_count = 0;
  std::size_t min_nonzero = std::numeric_limits<std::size_t>::max();
  for (std::size_t c : d.instance_count) {
    max_count = std::max(max_count, c);
    if (c > 0) min_nonzero = std::min(min_nonzero, c);
  }
  if (max_count == 0) throw ValidationError("dataset has no annotated instances");

  ImbalanceReport r;
  r.total_images = d.total_images;
  r.total_instances = d.total_instances;
  r.imbalance_ratio = static_cast<double>(max_count) / static_cast<double>(min_nonzero);
  for (std::size_t c = 0; c < d.num_classes(); ++c) {
    r.classes.push_back(
        {c, class_names[c], d.instance_count[c], d.image_count[c],
         static_cast<double>(d.image_count[c]) / static_cast<double>(d.total_images)});
  }
  std::stable_sort(r.classes.begin(), r.classes.end(),
                   [](const ClassImbalance& a, const ClassImbalance& b) {
                     return a.instances > b.instances;
                   });
  return r;
}

std::string format_imbalance_table(const ImbalanceReport& report) {
  std::size_t name_w = 5;
  for (const auto& c : report.classes) name_w = std::max(name_w, c.name.size());

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s %10s %10s %10s\n", static_cast<int>(name_w), "class",
                "instances", "images", "img_freq");
  out += buf;
  for (const auto& c : report.classes) {
    std::snprintf(buf, sizeof(buf), "%-*s %10zu %10zu %10.4f\n", static_cast<int>(name_w),
                  c.name.c_str(), c.instances, c.images, c.image_frequency);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-*s %10zu %10zu\n", static_cast<int>(name_w), "total",
                report.total_instances, report.total_images);
  out += buf;
  std::snprintf(buf, sizeof(buf), "imbalance ratio: %.4f\n", report.imbalance_ratio);
  out += buf;
  return out;
}

}  // namespace tailkit
