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
#include "tailkit/hybrid.hpp"

#include <algorithm>
#include <unordered_set>

#include "tailkit/random.hpp"

namespace tailkit {

namespace {

std::size_t class_index(std::span<const std::string> names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw ConfigurationError("unknown class \"" + name + "\" in balance targets", name);
  }
  return static_cast<std::size_t>(it - names.begin());
}

bool contains_class(const ImageEntry& e, std::size_t c) {
  return std::any_of(e.annotations.begin(), e.annotations.end(),
                     [c](const Annotation& a) { return a.class_id == c; });
}

}  // namespace

BalanceTargets balance_targets(const ClassDistribution& d,
                               std::span<const std::string> class_names,
                               const BalanceStrategy& strategy) {
  if (class_names.size() != d.num_classes()) {
    throw ArgumentError("class name count does not match the distribution");
  }
  BalanceTargets t;
  t.synth_count.assign(d.num_classes(), 0);

  if (const auto* fixed = std::get_if<FixedPerClass>(&strategy)) {
    for (const std::string& name : fixed->classes) {
      t.synth_count[class_index(class_names, name)] = fixed->count;
    }
  } else if (std::holds_alternative<MatchMax>(strategy)) {
    const std::size_t top =
        d.instance_count.empty()
            ? 0
            : *std::max_element(d.instance_count.begin(), d.instance_count.end());
    for (std::size_t c = 0; c < d.num_classes(); ++c) {
      t.synth_count[c] = top - d.instance_count[c];
    }
  } else {
    for (const auto& [name, count] : std::get<ManualTargets>(strategy).table) {
      t.synth_count[class_index(class_names, name)] = count;
    }
  }
  return t;
}

DatasetManifest mix(const DatasetManifest& real, const DatasetManifest& synth,
                    const BalanceTargets& targets, std::uint64_t seed) {
  if (real.class_names != synth.class_names) {
    throw ValidationError("real and synthetic manifests declare different class lists");
  }
  if (targets.synth_count.size() != real.num_classes()) {
    throw ArgumentError("balance targets do not cover every class");
  }
  for (const ImageEntry& e : synth.entries) {
    if (e.provenance != Provenance::kSynthetic) {
      throw ValidationError("entry \"" + e.id + "\" in the synthetic manifest is not synthetic",
                            e.id);
    }
  }

  SplitMix64 rng(seed);
  std::vector<char> picked(synth.entries.size(), 0);
  for (std::size_t c = 0; c < targets.synth_count.size(); ++c) {
    const std::size_t want = targets.synth_count[c];
    if (want == 0) continue;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < synth.entries.size(); ++i) {
      if (!picked[i] && contains_class(synth.entries[i], c)) pool.push_back(i);
    }
    if (pool.size() < want) {
      throw ValidationError("class \"" + real.class_names[c] + "\": need " +
                                std::to_string(want) + " synthetic images, " +
                                std::to_string(pool.size()) + " available (deficit " +
                                std::to_string(want - pool.size()) + ")",
                            real.class_names[c]);
    }
    for (std::size_t k = 0; k < want; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(pool.size() - k));
      std::swap(pool[k], pool[j]);
      picked[pool[k]] = 1;
    }
  }

  DatasetManifest out = real;
  std::unordered_set<std::string> ids;
  for (const ImageEntry& e : out.entries) ids.insert(e.id);
  for (std::size_t i = 0; i < synth.entries.size(); ++i) {
    if (!picked[i]) continue;
    ImageEntry e = synth.entries[i];
    e.id = std::string(kSyntheticIdPrefix) + e.id;
    if (!ids.insert(e.id).second) {
      throw ValidationError("hybrid id \"" + e.id + "\" collides with an existing entry", e.id);
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

ProvenanceSummary provenance_summary(const DatasetManifest& m) {
  ProvenanceSummary s;
  s.class_names = m.class_names;
  s.real_per_class.resize(m.num_classes());
  s.synthetic_per_class.resize(m.num_classes());
  std::vector<char> present(m.num_classes());
  for (const ImageEntry& e : m.entries) {
    const bool is_real = e.provenance == Provenance::kReal;
    (is_real ? s.real : s.synthetic) += 1;
    auto& counts = is_real ? s.real_per_class : s.synthetic_per_class;
    std::fill(present.begin(), present.end(), 0);
    for (const Annotation& a : e.annotations) {
      if (a.class_id >= m.num_classes()) {
        throw ValidationError("entry \"" + e.id + "\": class id out of range", e.id);
      }
      ++counts[a.class_id].instances;
      present[a.class_id] = 1;
    }
    for (std::size_t c = 0; c < present.size(); ++c) counts[c].images += present[c];
  }
  return s;
}

}  // namespace tailkit
