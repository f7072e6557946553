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
#include "tailkit/eval_det.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "text_util.hpp"

namespace tailkit {

namespace {

std::vector<ScoredMatch> by_confidence(std::span<const ScoredMatch> matches) {
  std::vector<ScoredMatch> sorted(matches.begin(), matches.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const ScoredMatch& a, const ScoredMatch& b) {
    return a.confidence > b.confidence;
  });
  return sorted;
}

std::optional<std::size_t> find_threshold(std::span<const double> thresholds, double t) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (std::abs(thresholds[i] - t) < 1e-12) return i;
  }
  return std::nullopt;
}

}  // namespace

MatchResult match_detections(std::span<const Detection> detections, const GroundTruthBoxes& gts,
                             std::size_t class_id, double iou_threshold) {
  std::vector<const Detection*> dets;
  for (const Detection& d : detections) {
    if (d.class_id == class_id) dets.push_back(&d);
  }
  std::stable_sort(dets.begin(), dets.end(), [](const Detection* a, const Detection* b) {
    return a->confidence > b->confidence;
  });

  MatchResult result;
  std::map<std::string_view, std::vector<char>> used;
  for (const auto& [image, boxes] : gts) {
    result.n_gt += boxes.size();
    used.emplace(image, std::vector<char>(boxes.size(), 0));
  }

  result.matches.reserve(dets.size());
  for (const Detection* d : dets) {
    bool tp = false;
    if (const auto it = gts.find(d->image_id); it != gts.end()) {
      const std::vector<NormBox>& boxes = it->second;
      std::vector<char>& taken = used.find(it->first)->second;
      std::optional<std::size_t> best;
      double best_iou = 0.0;
      for (std::size_t g = 0; g < boxes.size(); ++g) {
        if (taken[g]) continue;
        const double v = iou(d->box, boxes[g]);
        if (v >= iou_threshold && (!best || v > best_iou)) {
          best = g;
          best_iou = v;
        }
      }
      if (best) {
        taken[*best] = 1;
        tp = true;
      }
    }
    result.matches.push_back({d->confidence, tp});
  }
  return result;
}

std::vector<double> recall_grid() {
  std::vector<double> grid(kRecallPoints);
  for (std::size_t i = 0; i < kRecallPoints; ++i) grid[i] = static_cast<double>(i) / 100.0;
  return grid;
}

std::vector<double> interpolated_precision(std::span<const ScoredMatch> matches, long n_gt) {
  if (n_gt < 0) throw ArgumentError("ground-truth count must be non-negative");
  std::vector<double> out(kRecallPoints, 0.0);
  if (n_gt == 0 || matches.empty()) return out;

  const std::vector<ScoredMatch> sorted = by_confidence(matches);
  std::vector<double> precision(sorted.size());
  std::vector<double> recall(sorted.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    tp += sorted[i].true_positive ? 1 : 0;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / static_cast<double>(n_gt);
  }
  for (std::size_t i = sorted.size() - 1; i > 0; --i) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }

  const std::vector<double> grid = recall_grid();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto it = std::lower_bound(recall.begin(), recall.end(), grid[k]);
    if (it == recall.end()) break;
    out[k] = precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return out;
}

std::optional<double> average_precision(std::span<const ScoredMatch> matches, long n_gt) {
  if (n_gt < 0) throw ArgumentError("ground-truth count must be non-negative");
  if (n_gt == 0) {
    if (matches.empty()) return std::nullopt;
    return 0.0;
  }
  const std::vector<double> p = interpolated_precision(matches, n_gt);
  return std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
}

std::vector<double> default_iou_thresholds() {
  std::vector<double> t;
  for (int k = 0; k < 10; ++k) t.push_back(static_cast<double>(50 + 5 * k) / 100.0);
  return t;
}

DetEvalReport map_range(std::span<const Detection> detections, const DatasetManifest& gt,
                        std::span<const double> thresholds) {
  if (thresholds.empty()) throw ArgumentError("at least one IoU threshold is required");
  for (double t : thresholds) {
    if (!(t > 0.0 && t <= 1.0)) throw ArgumentError("IoU thresholds must lie in (0, 1]");
  }
  const std::size_t n_classes = gt.num_classes();
  for (const Detection& d : detections) {
    if (d.class_id >= n_classes) {
      throw ValidationError("detection on \"" + d.image_id + "\" has unknown class id " +
                            std::to_string(d.class_id));
    }
  }

  std::vector<GroundTruthBoxes> per_class(n_classes);
  std::vector<std::size_t> n_images(n_classes, 0);
  std::size_t total_gt = 0;
  for (const ImageEntry& e : gt.entries) {
    for (const Annotation& a : e.annotations) {
      if (a.class_id >= n_classes) {
        throw ValidationError("entry \"" + e.id + "\": class id out of range", e.id);
      }
      auto& boxes = per_class[a.class_id][e.id];
      if (boxes.empty()) ++n_images[a.class_id];
      boxes.push_back(a.box);
      ++total_gt;
    }
  }
  if (total_gt == 0) throw ValidationError("ground truth holds no boxes");

  DetEvalReport report;
  report.thresholds.assign(thresholds.begin(), thresholds.end());
  report.map_per_threshold.assign(thresholds.size(), 0.0);

  double ap_sum = 0.0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    ClassEval ce;
    ce.class_id = c;
    ce.name = gt.class_names[c];
    ce.n_images = n_images[c];
    ce.n_det = static_cast<std::size_t>(
        std::count_if(detections.begin(), detections.end(),
                      [c](const Detection& d) { return d.class_id == c; }));

    double class_sum = 0.0;
    bool present = true;
    for (double t : thresholds) {
      const MatchResult m = match_detections(detections, per_class[c], c, t);
      ce.n_gt = m.n_gt;
      const auto ap = average_precision(m.matches, static_cast<long>(m.n_gt));
      ce.ap.push_back(ap);
      if (!ap) {
        present = false;
        continue;
      }
      class_sum += *ap;
      ce.precision_curves.push_back(interpolated_precision(m.matches, static_cast<long>(m.n_gt)));
    }
    if (present) ce.ap50_95 = class_sum / static_cast<double>(thresholds.size());

    if (ce.n_gt > 0) {
      for (std::size_t k = 0; k < thresholds.size(); ++k) report.map_per_threshold[k] += *ce.ap[k];
      ap_sum += *ce.ap50_95;
      ++report.classes_in_mean;
    }
    report.classes.push_back(std::move(ce));
  }

  const auto n = static_cast<double>(report.classes_in_mean);
  for (double& v : report.map_per_threshold) v /= n;
  report.map50_95 = ap_sum / n;
  return report;
}

std::string format_det_table(const DetEvalReport& report, bool percent) {
  const auto i50 = find_threshold(report.thresholds, 0.50);
  const auto i75 = find_threshold(report.thresholds, 0.75);
  const double scale = percent ? 100.0 : 1.0;
  const char* num_fmt = percent ? "%10.1f" : "%10.4f";

  std::size_t name_w = 11;
  for (const auto& c : report.classes) name_w = std::max(name_w, c.name.size());
  const int nw = static_cast<int>(name_w);

  auto cell = [&](std::optional<double> v) {
    char buf[32];
    if (!v) {
      std::snprintf(buf, sizeof(buf), "%10s", "absent");
    } else {
      std::snprintf(buf, sizeof(buf), num_fmt, *v * scale);
    }
    return std::string(" ") + buf;
  };

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s %8s %10s", nw, "class", "images", "instances");
  out += buf;
  if (i50) out += "       AP50";
  if (i75) out += "       AP75";
  out += "   AP50-95\n";

  std::size_t all_instances = 0;
  for (const auto& c : report.classes) all_instances += c.n_gt;

  std::snprintf(buf, sizeof(buf), "%-*s %8s %10zu", nw, "all classes", "-", all_instances);
  out += buf;
  if (i50) out += cell(report.map_per_threshold[*i50]);
  if (i75) out += cell(report.map_per_threshold[*i75]);
  out += cell(report.map50_95) + "\n";

  for (const auto& c : report.classes) {
    std::snprintf(buf, sizeof(buf), "%-*s %8zu %10zu", nw, c.name.c_str(), c.n_images, c.n_gt);
    out += buf;
    if (i50) out += cell(c.ap[*i50]);
    if (i75) out += cell(c.ap[*i75]);
    out += cell(c.ap50_95) + "\n";
  }
  return out;
}

std::vector<Detection> parse_detections_jsonl(std::string_view text) {
  using nlohmann::json;
  std::vector<Detection> out;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = detail::trim(lines[i]);
    if (line.empty()) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error&) {
      throw ParseError("detection is not valid JSON", line_no);
    }
    if (!obj.is_object()) throw ParseError("detection must be a JSON object", line_no);

    auto number = [&](const char* key) {
      const auto it = obj.find(key);
      if (it == obj.end() || !it->is_number()) {
        throw ParseError(std::string("missing numeric field \"") + key + "\"", line_no);
      }
      return it->get<double>();
    };
    Detection d;
    const auto id = obj.find("image_id");
    if (id == obj.end() || !id->is_string()) {
      throw ParseError("missing string field \"image_id\"", line_no);
    }
    d.image_id = id->get<std::string>();
    const auto cls = obj.find("class_id");
    if (cls == obj.end() || !cls->is_number_unsigned()) {
      throw ParseError("\"class_id\" must be a non-negative integer", line_no);
    }
    d.class_id = cls->get<std::size_t>();
    d.box = {number("cx"), number("cy"), number("w"), number("h")};
    d.confidence = number("conf");
    if (!is_valid(d.box)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": detection box violates normalized-box ranges");
    }
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
      throw ValidationError("line " + std::to_string(line_no) + ": conf outside [0, 1]");
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace tailkit
