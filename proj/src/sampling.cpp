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
#include "tailkit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "tailkit/random.hpp"
#include "tailkit/stats.hpp"

namespace tailkit {

namespace {

void check_batch_size(std::size_t batch_size) {
  if (batch_size < 1) throw ArgumentError("batch size must be at least 1");
}

std::vector<std::vector<std::string>> chunk(const DatasetManifest& m,
                                            std::span<const std::size_t> order,
                                            std::size_t batch_size) {
  std::vector<std::vector<std::string>> batches;
  batches.reserve((order.size() + batch_size - 1) / batch_size);
  for (std::size_t i = 0; i < order.size(); i += batch_size) {
    auto& batch = batches.emplace_back();
    const std::size_t end = std::min(order.size(), i + batch_size);
    batch.reserve(end - i);
    for (std::size_t k = i; k < end; ++k) batch.push_back(m.entries[order[k]].id);
  }
  return batches;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kBaseline:
      return "baseline";
    case Strategy::kRfs:
      return "rfs";
    case Strategy::kCas:
      return "cas";
  }
  return "baseline";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "baseline") return Strategy::kBaseline;
  if (text == "rfs") return Strategy::kRfs;
  if (text == "cas") return Strategy::kCas;
  return std::nullopt;
}

std::size_t EpochPlan::epoch_length() const {
  std::size_t n = 0;
  for (const auto& b : batches) n += b.size();
  return n;
}

std::vector<std::string> EpochPlan::flatten() const {
  std::vector<std::string> out;
  out.reserve(epoch_length());
  for (const auto& b : batches) out.insert(out.end(), b.begin(), b.end());
  return out;
}

EpochPlan baseline_plan(const DatasetManifest& m, std::size_t batch_size, std::uint64_t seed) {
  check_batch_size(batch_size);
  if (m.entries.empty()) throw ValidationError("manifest has no entries");

  std::vector<std::size_t> order(m.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(seed);
  shuffle(std::span(order), rng);
  return {Strategy::kBaseline, seed, batch_size, chunk(m, order, batch_size)};
}

double repeat_factor(double f_c, double t) {
  if (!(f_c > 0.0)) throw ArgumentError("repeat factor undefined for class frequency 0");
  if (!(f_c <= 1.0)) throw ArgumentError("class frequency must lie in (0, 1]");
  if (!(t > 0.0 && t <= 1.0)) throw ArgumentError("threshold t must lie in (0, 1]");
  return std::max(1.0, std::sqrt(t / f_c));
}

RepeatFactorTable repeat_factors(const DatasetManifest& m, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw ArgumentError("threshold t must lie in (0, 1]");
  const ClassDistribution d = class_distribution(m);

  RepeatFactorTable table;
  table.per_class.assign(m.num_classes(), 1.0);
  for (std::size_t c = 0; c < m.num_classes(); ++c) {
    if (d.image_count[c] == 0) continue;
    const double f = static_cast<double>(d.image_count[c]) / static_cast<double>(d.total_images);
    table.per_class[c] = repeat_factor(f, t);
  }
  table.per_image.reserve(m.entries.size());
  for (const ImageEntry& e : m.entries) {
    double r = 1.0;
    for (const Annotation& a : e.annotations) r = std::max(r, table.per_class[a.class_id]);
    table.per_image.push_back(r);
  }
  return table;
}

EpochPlan rfs_plan(const DatasetManifest& m, double t, std::size_t batch_size,
                   std::uint64_t seed, RepeatRounding rounding) {
  check_batch_size(batch_size);
  if (m.entries.empty()) throw ValidationError("manifest has no entries");

  const RepeatFactorTable table = repeat_factors(m, t);
  SplitMix64 rng(seed);
  std::vector<std::size_t> replicated;
  replicated.reserve(m.entries.size());
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const double r = table.per_image[i];
    const double whole = std::floor(r);
    const double frac = r - whole;
    auto copies = static_cast<std::size_t>(whole);
    if (frac > 0.0) {
      if (rounding == RepeatRounding::kCeil) {
        ++copies;
      } else if (rng.uniform01() < frac) {
        ++copies;
      }
    }
    replicated.insert(replicated.end(), copies, i);
  }
  shuffle(std::span(replicated), rng);
  return {Strategy::kRfs, seed, batch_size, chunk(m, replicated, batch_size)};
}

std::vector<std::vector<std::size_t>> images_per_class(const DatasetManifest& m) {
  std::vector<std::vector<std::size_t>> lists(m.num_classes());
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    for (const Annotation& a : m.entries[i].annotations) {
      if (a.class_id >= lists.size()) {
        throw ValidationError("entry \"" + m.entries[i].id + "\": class id out of range",
                              m.entries[i].id);
      }
      auto& list = lists[a.class_id];
      if (list.empty() || list.back() != i) list.push_back(i);
    }
  }
  return lists;
}

EpochPlan cas_plan(const DatasetManifest& m, std::size_t batch_size,
                   std::optional<std::size_t> epoch_length, std::uint64_t seed) {
  check_batch_size(batch_size);
  const std::size_t length = epoch_length.value_or(m.entries.size());
  if (length < 1) throw ArgumentError("epoch length must be at least 1");
  if (m.class_names.empty()) throw ConfigurationError("manifest declares no classes");

  const auto lists = images_per_class(m);
  for (std::size_t c = 0; c < lists.size(); ++c) {
    if (lists[c].empty()) {
      throw ConfigurationError(
          "class \"" + m.class_names[c] + "\" has no images; class-aware sampling cannot "
          "give it equal exposure", m.class_names[c]);
    }
  }

  SplitMix64 rng(seed);
  std::vector<std::size_t> slots;
  slots.reserve(length);
  for (std::size_t s = 0; s < length; ++s) {
    const auto& list = lists[rng.below(lists.size())];
    slots.push_back(list[rng.below(list.size())]);
  }
  return {Strategy::kCas, seed, batch_size, chunk(m, slots, batch_size)};
}

}  // namespace tailkit
