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

#include <algorithm>
#include <optional>

#include "tailkit/error.hpp"

namespace tailkit {

/// Normalized center-format box: every field is a fraction of the image
/// width (cx, w) or height (cy, h). Stored exactly as parsed; corners may
/// poke outside [0,1] until a geometry op clips them.
template <typename Scalar>
struct BasicNormBox {
  Scalar cx{};
  Scalar cy{};
  Scalar w{};
  Scalar h{};

  friend bool operator==(const BasicNormBox&, const BasicNormBox&) = default;
};

using NormBox = BasicNormBox<double>;

/// Axis-aligned corner form, in whatever unit the caller works in.
template <typename Scalar>
struct Corners {
  Scalar x0{};
  Scalar y0{};
  Scalar x1{};
  Scalar y1{};

  Scalar width() const { return x1 - x0; }
  Scalar height() const { return y1 - y0; }
  Scalar area() const {
    return x1 > x0 && y1 > y0 ? (x1 - x0) * (y1 - y0) : Scalar(0);
  }
};

/// Pixel rectangle anchored at its top-left corner.
template <typename Scalar>
struct BasicPixelRect {
  Scalar x0{};
  Scalar y0{};
  Scalar w{};
  Scalar h{};

  friend bool operator==(const BasicPixelRect&, const BasicPixelRect&) = default;
};

using PixelRect = BasicPixelRect<double>;

template <typename Scalar>
bool is_valid(const BasicNormBox<Scalar>& b) {
  return b.cx >= 0 && b.cx <= 1 && b.cy >= 0 && b.cy <= 1 && b.w > 0 &&
         b.w <= 1 && b.h > 0 && b.h <= 1;
}

template <typename Scalar>
Corners<Scalar> to_corners(const BasicNormBox<Scalar>& b) {
  return {b.cx - b.w / 2, b.cy - b.h / 2, b.cx + b.w / 2, b.cy + b.h / 2};
}

template <typename Scalar>
BasicNormBox<Scalar> from_corners(const Corners<Scalar>& c) {
  return {(c.x0 + c.x1) / 2, (c.y0 + c.y1) / 2, c.x1 - c.x0, c.y1 - c.y0};
}

template <typename Scalar>
Corners<Scalar> intersect(const Corners<Scalar>& a, const Corners<Scalar>& b) {
  return {std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1),
          std::min(a.y1, b.y1)};
}

/// Corners of `b` clipped to the unit square.
template <typename Scalar>
Corners<Scalar> clip_unit(const BasicNormBox<Scalar>& b) {
  return intersect(to_corners(b), Corners<Scalar>{0, 0, 1, 1});
}

/// Intersection over union. Zero when the union has no area.
template <typename Scalar>
Scalar iou(const BasicNormBox<Scalar>& a, const BasicNormBox<Scalar>& b) {
  const Corners<Scalar> ca = to_corners(a);
  const Corners<Scalar> cb = to_corners(b);
  const Scalar inter = intersect(ca, cb).area();
  const Scalar uni = ca.area() + cb.area() - inter;
  if (!(uni > 0)) return Scalar(0);
  return std::clamp(inter / uni, Scalar(0), Scalar(1));
}

/// Re-expresses `box` (normalized to a src_w x src_h image) in the frame of
/// `crop`. Returns nullopt when nothing of the box survives or when the
/// surviving share of its area is below `min_visible`.
template <typename Scalar>
std::optional<BasicNormBox<Scalar>> remap_crop(const BasicNormBox<Scalar>& box,
                                               Scalar src_w, Scalar src_h,
                                               const BasicPixelRect<Scalar>& crop,
                                               Scalar min_visible = Scalar(0.25)) {
  if (!(src_w > 0 && src_h > 0)) {
    throw ArgumentError("source image dimensions must be positive");
  }
  if (!(crop.w > 0 && crop.h > 0)) {
    throw ArgumentError("crop width and height must be positive");
  }
  if (crop.x0 < 0 || crop.y0 < 0 || crop.x0 + crop.w > src_w ||
      crop.y0 + crop.h > src_h) {
    throw ArgumentError("crop extends outside the source image");
  }
  if (!(min_visible >= 0 && min_visible <= 1)) {
    throw ArgumentError("min_visible must lie in [0, 1]");
  }

  const Corners<Scalar> unit = to_corners(box);
  const Corners<Scalar> px{unit.x0 * src_w, unit.y0 * src_h, unit.x1 * src_w,
                           unit.y1 * src_h};
  const Corners<Scalar> window{crop.x0, crop.y0, crop.x0 + crop.w,
                               crop.y0 + crop.h};
  const Corners<Scalar> seen = intersect(px, window);
  const Scalar seen_area = seen.area();
  if (!(seen_area > 0)) return std::nullopt;
  if (seen_area / px.area() < min_visible) return std::nullopt;

  auto unit_clamp = [](Scalar v) { return std::clamp(v, Scalar(0), Scalar(1)); };
  return from_corners(Corners<Scalar>{
      unit_clamp((seen.x0 - crop.x0) / crop.w), unit_clamp((seen.y0 - crop.y0) / crop.h),
      unit_clamp((seen.x1 - crop.x0) / crop.w), unit_clamp((seen.y1 - crop.y0) / crop.h)});
}

/// Records a uniform resize step. Normalized coordinates do not change
/// under uniform scaling, so the box comes back untouched once it has been
/// checked.
template <typename Scalar>
BasicNormBox<Scalar> resize_invariance_check(const BasicNormBox<Scalar>& box) {
  if (!is_valid(box)) {
    throw ValidationError("box violates normalized-box invariants");
  }
  return box;
}

}  // namespace tailkit
