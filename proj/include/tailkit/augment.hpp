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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tailkit/dataset.hpp"
#include "tailkit/geometry.hpp"

namespace tailkit {

// Label-space mosaic and mixup. Only the plans are produced here; blending
// the pixels is left to whatever image tool consumes them.

/// Where one source image lands in the mosaic canvas. The source is scaled
/// uniformly so its long side equals the canvas size, then translated by
/// (offset_x, offset_y); only the part inside `quadrant` is kept.
struct MosaicPlacement {
  std::string source_id;
  PixelRect quadrant;
  double scale_x = 1.0;
  double scale_y = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
};

struct MosaicPlan {
  int output_size = 0;
  // Split point in canvas pixels.
  int center_x = 0;
  int center_y = 0;
  // Top-left, top-right, bottom-left, bottom-right.
  std::array<MosaicPlacement, 4> placements;
  std::vector<Annotation> annotations;
  // Index into `placements` for each merged annotation.
  std::vector<std::size_t> annotation_source;
};

struct MosaicOptions {
  int output_size = 640;
  // Split point as fractions of the canvas; drawn from U[0.25, 0.75]^2 with
  // the seed when absent.
  std::optional<std::pair<double, double>> center;
  // Boxes keeping less than this share of their mapped area are dropped.
  double min_area = 0.10;
};

inline constexpr double kMosaicCenterMin = 0.25;
inline constexpr double kMosaicCenterMax = 0.75;

/// Four-image mosaic. Images go TL, TR, BL, BR, each touching the split
/// point with the corner nearest to it. Randomness: two uniform01() draws
/// (x then y) for the center, only when `options.center` is absent.
MosaicPlan mosaic_labels(std::span<const ImageEntry> entries, const MosaicOptions& options,
                         std::uint64_t seed);

struct WeightedAnnotation {
  Annotation annotation;
  double weight = 0.0;
  // 0 for image A, 1 for image B.
  int source = 0;
};

struct MixupPlan {
  std::string id_a;
  std::string id_b;
  double lambda = 0.5;
  std::vector<WeightedAnnotation> annotations;
};

/// A's boxes carry weight lambda and B's carry 1 - lambda; boxes unchanged.
MixupPlan mixup_labels(const ImageEntry& a, const ImageEntry& b, double lambda);

inline constexpr double kDefaultMixupAlpha = 32.0;

}  // namespace tailkit
