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
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tailkit/geometry.hpp"

namespace tailkit {

enum class Provenance { kReal, kSynthetic };

std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

struct Annotation {
  std::size_t class_id = 0;
  NormBox box;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct ImageEntry {
  std::string id;
  int width_px = 0;
  int height_px = 0;
  Provenance provenance = Provenance::kReal;
  // Path as written in the descriptor; relative paths resolve against the
  // descriptor's directory.
  std::string label_file;
  std::vector<Annotation> annotations;

  friend bool operator==(const ImageEntry&, const ImageEntry&) = default;
};

struct DatasetManifest {
  std::vector<std::string> class_names;
  std::vector<ImageEntry> entries;

  std::size_t num_classes() const { return class_names.size(); }

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

/// Parses a YOLO/Darknet label file: one `class_id cx cy w h` object per
/// line. Blank lines and `#` comments are skipped; CRLF is accepted.
/// Throws ParseError for malformed lines and ValidationError for class ids
/// or coordinates outside their ranges, both carrying the 1-based line.
std::vector<Annotation> parse_label_file(std::string_view text, std::size_t n_classes);

/// Inverse of parse_label_file. Coordinates are written with 17 significant
/// digits so they parse back to the same doubles.
std::string format_label_file(std::span<const Annotation> annotations);

/// Returns the text of a label file, or nullopt when it does not exist.
using LabelResolver = std::function<std::optional<std::string>(const std::string&)>;

/// Resolver reading label files relative to `base_dir`.
LabelResolver directory_resolver(std::filesystem::path base_dir);

/// Builds a validated manifest from its JSON descriptor. Errors name the
/// offending entry id.
DatasetManifest load_manifest(std::string_view descriptor, const LabelResolver& resolve);

/// Reads a descriptor from disk; label files resolve next to it.
DatasetManifest load_manifest_file(const std::filesystem::path& path);

/// JSON descriptor text for `m` (label contents are not included; see
/// format_label_file).
std::string serialize_manifest(const DatasetManifest& m);

struct Violation {
  std::string entry_id;
  std::optional<std::size_t> annotation_index;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Collects every invariant violation in `m` instead of stopping at the first.
ValidationReport validate_manifest(const DatasetManifest& m);

}  // namespace tailkit
