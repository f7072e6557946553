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
#include "tailkit/augment.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "tailkit/random.hpp"

namespace tailkit {

MosaicPlan mosaic_labels(std::span<const ImageEntry> entries, const MosaicOptions& options,
                         std::uint64_t seed) {
  if (entries.size() != 4) throw ArgumentError("mosaic needs exactly 4 images");
  if (options.output_size < 1) throw ArgumentError("mosaic output size must be positive");
  if (!(options.min_area >= 0.0 && options.min_area < 1.0)) {
    throw ArgumentError("mosaic min_area must lie in [0, 1)");
  }

  double fx;
  double fy;
  if (options.center) {
    std::tie(fx, fy) = *options.center;
    if (!(fx >= kMosaicCenterMin && fx <= kMosaicCenterMax && fy >= kMosaicCenterMin &&
          fy <= kMosaicCenterMax)) {
      throw ArgumentError("mosaic center must lie in [0.25, 0.75]^2");
    }
  } else {
    SplitMix64 rng(seed);
    fx = kMosaicCenterMin + (kMosaicCenterMax - kMosaicCenterMin) * rng.uniform01();
    fy = kMosaicCenterMin + (kMosaicCenterMax - kMosaicCenterMin) * rng.uniform01();
  }

  const int size = options.output_size;
  const double s = static_cast<double>(size);
  MosaicPlan plan;
  plan.output_size = size;
  plan.center_x = static_cast<int>(std::lround(fx * s));
  plan.center_y = static_cast<int>(std::lround(fy * s));
  const double xc = plan.center_x;
  const double yc = plan.center_y;
  if (plan.center_x <= 0 || plan.center_x >= size || plan.center_y <= 0 ||
      plan.center_y >= size) {
    throw ArgumentError("degenerate mosaic quadrant: output size " + std::to_string(size) +
                        " too small for the split point");
  }

  const std::array<PixelRect, 4> quadrants = {
      PixelRect{0, 0, xc, yc}, PixelRect{xc, 0, s - xc, yc}, PixelRect{0, yc, xc, s - yc},
      PixelRect{xc, yc, s - xc, s - yc}};

  for (std::size_t q = 0; q < 4; ++q) {
    const ImageEntry& e = entries[q];
    if (e.width_px < 1 || e.height_px < 1) {
      throw ArgumentError("entry \"" + e.id + "\" has non-positive dimensions");
    }
    const double w = e.width_px;
    const double h = e.height_px;
    const double scale = s / std::max(w, h);
    const double sw = w * scale;
    const double sh = h * scale;
    const bool left = q == 0 || q == 2;
    const bool top = q == 0 || q == 1;

    MosaicPlacement& p = plan.placements[q];
    p.source_id = e.id;
    p.quadrant = quadrants[q];
    p.scale_x = scale;
    p.scale_y = scale;
    p.offset_x = left ? xc - sw : xc;
    p.offset_y = top ? yc - sh : yc;

    const Corners<double> placed{p.offset_x, p.offset_y, p.offset_x + sw, p.offset_y + sh};
    const Corners<double> quad{p.quadrant.x0, p.quadrant.y0, p.quadrant.x0 + p.quadrant.w,
                               p.quadrant.y0 + p.quadrant.h};
    const Corners<double> visible = intersect(placed, quad);

    for (const Annotation& a : e.annotations) {
      const Corners<double> unit = to_corners(a.box);
      const Corners<double> mapped{unit.x0 * w * scale + p.offset_x,
                                   unit.y0 * h * scale + p.offset_y,
                                   unit.x1 * w * scale + p.offset_x,
                                   unit.y1 * h * scale + p.offset_y};
      const Corners<double> kept = intersect(mapped, visible);
      const double kept_area = kept.area();
      if (!(kept_area > 0.0)) continue;
      if (kept_area / mapped.area() < options.min_area) continue;

      auto to_unit = [&](double v) { return std::clamp(v / s, 0.0, 1.0); };
      const NormBox out = from_corners(Corners<double>{to_unit(kept.x0), to_unit(kept.y0),
                                                       to_unit(kept.x1), to_unit(kept.y1)});
      if (!is_valid(out)) continue;
      plan.annotations.push_back({a.class_id, out});
      plan.annotation_source.push_back(q);
    }
  }
  return plan;
}

MixupPlan mixup_labels(const ImageEntry& a, const ImageEntry& b, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ArgumentError("mixup lambda must lie in [0, 1]");
  MixupPlan plan{a.id, b.id, lambda, {}};
  plan.annotations.reserve(a.annotations.size() + b.annotations.size());
  for (const Annotation& ann : a.annotations) plan.annotations.push_back({ann, lambda, 0});
  for (const Annotation& ann : b.annotations) plan.annotations.push_back({ann, 1.0 - lambda, 1});
  return plan;
}

}  // namespace tailkit
