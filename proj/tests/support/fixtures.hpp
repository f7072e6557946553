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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tailkit/dataset.hpp"
#include "tailkit/random.hpp"

namespace tailkit::testing {

inline ImageEntry make_entry(std::string id, std::vector<Annotation> annotations,
                             Provenance provenance = Provenance::kReal, int width = 640,
                             int height = 480) {
  ImageEntry e;
  e.id = std::move(id);
  e.width_px = width;
  e.height_px = height;
  e.provenance = provenance;
  e.label_file = "labels/" + e.id + ".txt";
  e.annotations = std::move(annotations);
  return e;
}

inline Annotation ann(std::size_t class_id, double cx = 0.5, double cy = 0.5, double w = 0.2,
                      double h = 0.2) {
  return Annotation{class_id, NormBox{cx, cy, w, h}};
}

inline std::vector<std::string> class_list(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < n; ++c) names.push_back("class" + std::to_string(c));
  return names;
}

// Six classes, one class per image, image counts 2000:800:400:200:150:100.
inline DatasetManifest skewed_manifest() {
  const std::vector<std::size_t> counts = {2000, 800, 400, 200, 150, 100};
  DatasetManifest m;
  m.class_names = {"thyroid_cartilage", "strap_muscle", "cricoid_cartilage",
                   "thyroid_lobe",      "vocal_fold",   "tracheal_ring"};
  for (std::size_t c = 0; c < counts.size(); ++c) {
    for (std::size_t i = 0; i < counts[c]; ++i) {
      m.entries.push_back(make_entry("c" + std::to_string(c) + "_" + std::to_string(i),
                                     {ann(c, 0.5, 0.5, 0.3, 0.3)}));
    }
  }
  return m;
}

// `n_total` images; `n_rare` of them hold class 1 only, the rest class 0.
inline DatasetManifest rare_manifest(std::size_t n_total, std::size_t n_rare) {
  DatasetManifest m;
  m.class_names = {"common", "rare"};
  for (std::size_t i = 0; i < n_total; ++i) {
    const std::size_t c = i < n_rare ? 1 : 0;
    m.entries.push_back(make_entry("img" + std::to_string(i), {ann(c)}));
  }
  return m;
}

inline NormBox random_box(SplitMix64& rng) {
  const double w = 0.01 + 0.99 * rng.uniform01();
  const double h = 0.01 + 0.99 * rng.uniform01();
  return NormBox{rng.uniform01(), rng.uniform01(), w, h};
}

// A valid manifest with random shape; labels hold arbitrary doubles.
inline DatasetManifest random_manifest(SplitMix64& rng) {
  DatasetManifest m;
  m.class_names = class_list(1 + rng.below(6));
  const std::size_t n = rng.below(12);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Annotation> anns;
    const std::size_t k = rng.below(6);
    for (std::size_t j = 0; j < k; ++j) {
      anns.push_back({rng.below(m.class_names.size()), random_box(rng)});
    }
    auto e = make_entry("e" + std::to_string(i), std::move(anns),
                        rng.below(2) ? Provenance::kReal : Provenance::kSynthetic,
                        1 + static_cast<int>(rng.below(4000)), 1 + static_cast<int>(rng.below(4000)));
    m.entries.push_back(std::move(e));
  }
  return m;
}

inline std::filesystem::path temp_dir(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("tailkit_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes label files next to the manifest; label_file fields are kept.
inline std::filesystem::path write_dataset(const std::filesystem::path& dir,
                                           const DatasetManifest& m,
                                           const std::string& name = "manifest.json") {
  for (const ImageEntry& e : m.entries) {
    write_text(dir / e.label_file, format_label_file(e.annotations));
  }
  const auto path = dir / name;
  write_text(path, serialize_manifest(m));
  return path;
}

}  // namespace tailkit::testing
