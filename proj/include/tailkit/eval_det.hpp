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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tailkit/dataset.hpp"
#include "tailkit/geometry.hpp"

namespace tailkit {

// COCO-style detection scoring: greedy highest-IoU matching and 101-point
// interpolated average precision, averaged over IoU thresholds.

struct Detection {
  std::string image_id;
  std::size_t class_id = 0;
  NormBox box;
  double confidence = 0.0;
};

struct ScoredMatch {
  double confidence = 0.0;
  bool true_positive = false;

  friend bool operator==(const ScoredMatch&, const ScoredMatch&) = default;
};

struct MatchResult {
  // Descending confidence, ties in input order.
  std::vector<ScoredMatch> matches;
  std::size_t n_gt = 0;
};

/// Ground-truth boxes of one class keyed by image id.
using GroundTruthBoxes = std::map<std::string, std::vector<NormBox>, std::less<>>;

/// Walks detections of `class_id` from most to least confident. Each takes
/// the still-unmatched ground truth of its image with the highest IoU, if
/// that IoU is at least `iou_threshold` (TP); otherwise it is an FP. IoU
/// ties go to the lower ground-truth index.
MatchResult match_detections(std::span<const Detection> detections, const GroundTruthBoxes& gts,
                             std::size_t class_id, double iou_threshold);

inline constexpr std::size_t kRecallPoints = 101;

/// Recall grid {0.00, 0.01, ..., 1.00}.
std::vector<double> recall_grid();

/// Interpolated precision at each recall_grid() point: the running max of
/// precision from the right, read at the first rank whose recall reaches
/// the grid point (0 past the last rank).
std::vector<double> interpolated_precision(std::span<const ScoredMatch> matches, long n_gt);

/// Mean of interpolated_precision. 0 when n_gt = 0 but detections exist;
/// nullopt ("absent") when there is neither ground truth nor detection.
/// Throws ArgumentError for negative n_gt.
std::optional<double> average_precision(std::span<const ScoredMatch> matches, long n_gt);

/// {0.50, 0.55, ..., 0.95}
std::vector<double> default_iou_thresholds();

struct ClassEval {
  std::size_t class_id = 0;
  std::string name;
  std::size_t n_gt = 0;
  // Ground-truth images holding the class.
  std::size_t n_images = 0;
  std::size_t n_det = 0;
  // One per threshold; nullopt when the class is absent.
  std::vector<std::optional<double>> ap;
  std::optional<double> ap50_95;
  // [threshold][recall point]; empty when absent.
  std::vector<std::vector<double>> precision_curves;
};

struct DetEvalReport {
  std::vector<double> thresholds;
  std::vector<ClassEval> classes;
  // Mean over classes with ground truth, per threshold.
  std::vector<double> map_per_threshold;
  double map50_95 = 0.0;
  std::size_t classes_in_mean = 0;
};

/// Full evaluation over every class of `gt`. Detections on images missing
/// from `gt` count as false positives. Throws ValidationError when `gt`
/// has no boxes at all or a detection names an unknown class.
DetEvalReport map_range(std::span<const Detection> detections, const DatasetManifest& gt,
                        std::span<const double> thresholds);

inline DetEvalReport map_range(std::span<const Detection> detections,
                               const DatasetManifest& gt) {
  const auto t = default_iou_thresholds();
  return map_range(detections, gt, t);
}

/// Table with one row per class plus an "all" row: AP50, AP75 (when those
/// thresholds were evaluated) and AP50-95. `percent` prints 66.0 for 0.66.
std::string format_det_table(const DetEvalReport& report, bool percent);

/// Parses one detection per line: {"image_id","class_id","cx","cy","w","h","conf"}.
/// Blank lines are skipped; errors carry the 1-based line.
std::vector<Detection> parse_detections_jsonl(std::string_view text);

}  // namespace tailkit
