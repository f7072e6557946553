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
#include "tailkit/dataset.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "text_util.hpp"

namespace tailkit {

namespace {

using nlohmann::json;

std::string coord_range_error(const NormBox& b) {
  if (!(b.cx >= 0 && b.cx <= 1)) return "cx outside [0, 1]";
  if (!(b.cy >= 0 && b.cy <= 1)) return "cy outside [0, 1]";
  if (!(b.w > 0 && b.w <= 1)) return "w outside (0, 1]";
  if (!(b.h > 0 && b.h <= 1)) return "h outside (0, 1]";
  return {};
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field \"" + key + "\"");
  }
  return *it;
}

int positive_int(const json& v, const char* key, const std::string& id) {
  if (!v.is_number_integer() || v.get<long long>() < 1 ||
      v.get<long long>() > std::numeric_limits<int>::max()) {
    throw ValidationError("entry \"" + id + "\": " + key + " must be a positive integer",
                          id);
  }
  return v.get<int>();
}

}  // namespace

std::string_view to_string(Provenance p) {
  return p == Provenance::kReal ? "real" : "synthetic";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  if (text == "real") return Provenance::kReal;
  if (text == "synthetic") return Provenance::kSynthetic;
  return std::nullopt;
}

std::vector<Annotation> parse_label_file(std::string_view text, std::size_t n_classes) {
  if (n_classes < 1) throw ArgumentError("n_classes must be at least 1");

  std::vector<Annotation> out;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = detail::split_whitespace(line);
    if (fields.size() != 5) {
      throw ParseError(std::to_string(fields.size()) + " fields, expected 5", line_no);
    }
    const auto cls = detail::parse_uint(fields[0]);
    if (!cls) {
      throw ParseError("class id \"" + std::string(fields[0]) + "\" is not a non-negative integer",
                       line_no);
    }
    double coords[4];
    for (int k = 0; k < 4; ++k) {
      const auto v = detail::parse_double(fields[k + 1]);
      if (!v) {
        throw ParseError("\"" + std::string(fields[k + 1]) + "\" is not a number", line_no);
      }
      coords[k] = *v;
    }
    if (*cls >= n_classes) {
      throw ValidationError("line " + std::to_string(line_no) + ": class id " +
                            std::to_string(*cls) + " >= " + std::to_string(n_classes) +
                            " declared classes");
    }
    const NormBox box{coords[0], coords[1], coords[2], coords[3]};
    if (const std::string why = coord_range_error(box); !why.empty()) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + why);
    }
    out.push_back({static_cast<std::size_t>(*cls), box});
  }
  return out;
}

std::string format_label_file(std::span<const Annotation> annotations) {
  std::string out;
  for (const Annotation& a : annotations) {
    out += std::to_string(a.class_id);
    for (double v : {a.box.cx, a.box.cy, a.box.w, a.box.h}) {
      out += ' ';
      out += detail::format_double(v);
    }
    out += '\n';
  }
  return out;
}

LabelResolver directory_resolver(std::filesystem::path base_dir) {
  return [base = std::move(base_dir)](const std::string& rel) -> std::optional<std::string> {
    const std::filesystem::path p = std::filesystem::path(rel).is_absolute() ? std::filesystem::path(rel) : base / rel;
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
}

DatasetManifest load_manifest(std::string_view descriptor, const LabelResolver& resolve) {
  json doc;
  try {
    doc = json::parse(descriptor);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("manifest must be a JSON object");

  DatasetManifest m;
  const json& names = require(doc, "class_names", "manifest");
  if (!names.is_array() || names.empty()) {
    throw ValidationError("class_names must be a non-empty array");
  }
  std::unordered_set<std::string> seen_names;
  for (const json& n : names) {
    if (!n.is_string()) throw ValidationError("class_names must contain strings");
    if (!seen_names.insert(n.get<std::string>()).second) {
      throw ValidationError("duplicate class name \"" + n.get<std::string>() + "\"",
                            n.get<std::string>());
    }
    m.class_names.push_back(n.get<std::string>());
  }

  const json& entries = require(doc, "entries", "manifest");
  if (!entries.is_array()) throw ValidationError("entries must be an array");

  std::unordered_set<std::string> seen_ids;
  m.entries.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    const std::string where = "entry " + std::to_string(i);
    if (!e.is_object()) throw ValidationError(where + " must be an object");
    const json& id = require(e, "id", where);
    if (!id.is_string() || id.get<std::string>().empty()) {
      throw ValidationError(where + ": id must be a non-empty string");
    }

    ImageEntry entry;
    entry.id = id.get<std::string>();
    const std::string named = "entry \"" + entry.id + "\"";
    if (!seen_ids.insert(entry.id).second) {
      throw ValidationError("duplicate entry id \"" + entry.id + "\"", entry.id);
    }
    entry.width_px = positive_int(require(e, "width_px", named), "width_px", entry.id);
    entry.height_px = positive_int(require(e, "height_px", named), "height_px", entry.id);

    const json& prov = require(e, "provenance", named);
    const auto parsed = prov.is_string() ? parse_provenance(prov.get<std::string>())
                                         : std::nullopt;
    if (!parsed) {
      throw ValidationError(named + ": provenance must be \"real\" or \"synthetic\"", entry.id);
    }
    entry.provenance = *parsed;

    const json& label = require(e, "label_file", named);
    if (!label.is_string()) {
      throw ValidationError(named + ": label_file must be a string", entry.id);
    }
    entry.label_file = label.get<std::string>();
    const auto text = resolve(entry.label_file);
    if (!text) {
      throw ValidationError(named + ": missing label file \"" + entry.label_file + "\"",
                            entry.id);
    }
    try {
      entry.annotations = parse_label_file(*text, m.class_names.size());
    } catch (const ParseError& err) {
      throw ParseError(named + " (" + entry.label_file + "): " + err.what());
    } catch (const ValidationError& err) {
      throw ValidationError(named + " (" + entry.label_file + "): " + err.what(), entry.id);
    }
    m.entries.push_back(std::move(entry));
  }
  return m;
}

DatasetManifest load_manifest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_manifest(ss.str(), directory_resolver(path.parent_path()));
}

std::string serialize_manifest(const DatasetManifest& m) {
  json doc;
  doc["class_names"] = m.class_names;
  json entries = json::array();
  for (const ImageEntry& e : m.entries) {
    entries.push_back({{"id", e.id},
                       {"width_px", e.width_px},
                       {"height_px", e.height_px},
                       {"provenance", to_string(e.provenance)},
                       {"label_file", e.label_file}});
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

ValidationReport validate_manifest(const DatasetManifest& m) {
  ValidationReport report;
  if (m.class_names.empty()) {
    report.violations.push_back({"", std::nullopt, "class list is empty"});
  }
  std::unordered_set<std::string> ids;
  for (const ImageEntry& e : m.entries) {
    if (!ids.insert(e.id).second) {
      report.violations.push_back({e.id, std::nullopt, "duplicate entry id"});
    }
    if (e.width_px < 1 || e.height_px < 1) {
      report.violations.push_back({e.id, std::nullopt, "image dimensions must be positive"});
    }
    for (std::size_t k = 0; k < e.annotations.size(); ++k) {
      const Annotation& a = e.annotations[k];
      if (a.class_id >= m.class_names.size()) {
        report.violations.push_back(
            {e.id, k, "class id " + std::to_string(a.class_id) + " out of range"});
      }
      if (const std::string why = coord_range_error(a.box); !why.empty()) {
        report.violations.push_back({e.id, k, why});
      }
    }
  }
  return report;
}

}  // namespace tailkit
