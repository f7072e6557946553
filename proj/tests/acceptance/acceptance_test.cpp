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
// Acceptance suite: one PASS/FAIL line per criterion, exit 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "oracles/ap_oracle.hpp"
#include "support/cli_runner.hpp"
#include "support/cli_workspace.hpp"
#include "support/det_fixtures.hpp"
#include "support/fixtures.hpp"
#include "tailkit/eval_det.hpp"
#include "tailkit/eval_gen.hpp"
#include "tailkit/geometry.hpp"
#include "tailkit/hybrid.hpp"
#include "tailkit/sampling.hpp"
#include "tailkit/stats.hpp"

namespace {

using namespace tailkit;
namespace fs = std::filesystem;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += " [over time limit]";
  }
  char timing[64];
  if (limit_s > 0) {
    std::snprintf(timing, sizeof timing, "%.3fs < %.0fs", secs, limit_s);
  } else {
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
  }
  std::printf("[%s] %2d %-30s %s (%s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
              timing);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome cas_uniformity() {
  const DatasetManifest m = testing::skewed_manifest();
  const auto d = class_distribution(m);
  const double skew = static_cast<double>(d.image_count.front()) / static_cast<double>(d.image_count.back());
  std::map<std::string, std::size_t> class_of;
  for (const auto& e : m.entries) class_of[e.id] = e.annotations[0].class_id;
  const EpochPlan plan = cas_plan(m, 64, 60000, 2024);
  std::vector<double> share(6, 0.0);
  for (const auto& id : plan.flatten()) share[class_of.at(id)] += 1.0;
  double worst = 0;
  for (double& s : share) {
    s /= 60000.0;
    worst = std::max(worst, std::abs(s - 1.0 / 6.0));
  }
  return {skew >= 20 && plan.epoch_length() == 60000 && worst <= 0.01,
          fmt("skew %.0f:1, max |share - 1/6| = ", skew) + fmt("%.5f <= 0.01", worst)};
}

Outcome rfs_expectation() {
  // 1 rare image of 400: f = 0.0025, t = 0.01, r = 2.
  const DatasetManifest m = testing::rare_manifest(400, 1);
  const double r = repeat_factors(m, 0.01).per_image[0];
  const int seeds = 1000;
  double total = 0;
  for (int s = 0; s < seeds; ++s) {
    const auto flat = rfs_plan(m, 0.01, 64, static_cast<std::uint64_t>(s)).flatten();
    total += static_cast<double>(std::count(flat.begin(), flat.end(), "img0"));
  }
  const double mean = total / seeds;
  const double rel = std::abs(mean - 2.0) / 2.0;
  return {r == 2.0 && rel <= 0.05, fmt("r = %.6f, ", r) + fmt("mean repeats over 1000 seeds = %.4f", mean) +
                                        fmt(", rel err %.4f <= 0.05", rel)};
}

Outcome rfs_degeneracy() {
  const DatasetManifest m = testing::skewed_manifest();
  const auto d = class_distribution(m);
  const double f_min = static_cast<double>(*std::min_element(d.image_count.begin(), d.image_count.end())) /
                       static_cast<double>(d.total_images);
  bool ok = true;
  int checked = 0;
  for (double t : {f_min, f_min / 2, f_min / 10}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto a = rfs_plan(m, t, 32, seed).flatten();
      auto b = baseline_plan(m, 32, seed).flatten();
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      ok = ok && a == b && a.size() == m.entries.size();
      ++checked;
    }
  }
  return {ok, std::to_string(checked) + " plans, multiset equal to baseline (exact)"};
}

Outcome ap_oracle() {
  SplitMix64 rng(20240601);
  const auto thresholds = default_iou_thresholds();
  double worst = 0;
  const int n = 500;
  bool shape_ok = true;
  for (int i = 0; i < n; ++i) {
    const auto mi = testing::micro_instance(rng);
    const auto got = map_range(mi.dets, mi.gt);
    const auto want = oracle::evaluate(mi.oracle_dets, mi.oracle_gt, mi.gt.num_classes(), thresholds);
    worst = std::max(worst, std::abs(got.map50_95 - want.map));
    for (std::size_t c = 0; c < mi.gt.num_classes(); ++c) {
      if (got.classes[c].ap50_95.has_value() != want.class_ap[c].has_value()) {
        shape_ok = false;
      } else if (want.class_ap[c]) {
        worst = std::max(worst, std::abs(*got.classes[c].ap50_95 - *want.class_ap[c]));
      }
    }
  }
  return {shape_ok && worst <= 1e-9, std::to_string(n) + " instances, max |diff| = " + fmt("%.3g <= 1e-9", worst)};
}

Outcome perfect_detector() {
  SplitMix64 rng(5);
  DatasetManifest gt;
  gt.class_names = testing::class_list(6);
  for (int i = 0; i < 50; ++i) {
    std::vector<Annotation> anns;
    for (std::size_t k = 0, n = 1 + rng.below(4); k < n; ++k) anns.push_back({rng.below(6), testing::random_box(rng)});
    gt.entries.push_back(testing::make_entry("img" + std::to_string(i), anns));
  }
  std::vector<Detection> dets;
  for (const auto& e : gt.entries) {
    for (const auto& a : e.annotations) dets.push_back({e.id, a.class_id, a.box, 1.0});
  }
  const double perfect = map_range(dets, gt).map50_95;
  const double empty = map_range(std::vector<Detection>{}, gt).map50_95;
  return {perfect == 1.0 && empty == 0.0, fmt("perfect = %.17g, ", perfect) + fmt("empty = %.17g (exact)", empty)};
}

Outcome fid_closed_forms() {
  SplitMix64 rng(6);
  MatrixXd f(60, 8);
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = rng.normal();
  }
  const auto s = gaussian_stats(f);
  const double same = fid(s, s).value;
  const double shift = fid(GaussianStats<double>{VectorXd::Zero(5), MatrixXd::Identity(5, 5)},
                           GaussianStats<double>{VectorXd::Unit(5, 0), MatrixXd::Identity(5, 5)})
                           .value;
  const double scalar = fid(GaussianStats<double>{VectorXd::Zero(1), MatrixXd::Constant(1, 1, 4.0)},
                            GaussianStats<double>{VectorXd::Zero(1), MatrixXd::Constant(1, 1, 1.0)})
                            .value;
  double asym = 0;
  for (int i = 0; i < 200; ++i) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.below(10));
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(30));
    MatrixXd a(n, d), b(n, d);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        a(r, c) = rng.normal();
        b(r, c) = 2 * rng.normal() + 0.3;
      }
    }
    const auto ra = gaussian_stats(a);
    const auto rb = gaussian_stats(b);
    asym = std::max(asym, std::abs(fid(ra, rb).value - fid(rb, ra).value));
  }
  const bool ok = std::abs(same) < 1e-8 && std::abs(shift - 1) <= 1e-8 && std::abs(scalar - 1) <= 1e-8 && asym <= 1e-8;
  return {ok, fmt("identical %.2g, ", same) + fmt("shift %.12f, ", shift) + fmt("scalar %.12f, ", scalar) +
                  fmt("max asymmetry %.2g (tol 1e-8)", asym)};
}

Outcome is_bounds() {
  const MatrixXd uniform = MatrixXd::Constant(20, 7, 1.0 / 7.0);
  const double u = inception_score(uniform, 1, 0).mean;
  const double k = inception_score(MatrixXd::Identity(9, 9), 1, 0).mean;
  SplitMix64 rng(7);
  bool bounded = true;
  for (int i = 0; i < 500; ++i) {
    const Eigen::Index classes = 1 + static_cast<Eigen::Index>(rng.below(10));
    const Eigen::Index rows = 1 + static_cast<Eigen::Index>(rng.below(50));
    MatrixXd p(rows, classes);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < classes; ++c) p(r, c) = rng.below(3) == 0 ? 0.0 : rng.uniform01();
      if (p.row(r).sum() == 0) p(r, 0) = 1;
      p.row(r) /= p.row(r).sum();
    }
    const Eigen::Index splits = 1 + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(std::min<Eigen::Index>(rows, 5))));
    const double v = inception_score(p, splits, rng.next()).mean;
    bounded = bounded && v >= 1.0 && v <= static_cast<double>(classes) + 1e-12;
  }
  const bool ok = std::abs(u - 1) <= 1e-9 && std::abs(k - 9) <= 1e-9 && bounded;
  return {ok, fmt("uniform %.12f, ", u) + fmt("9 one-hots %.12f, ", k) + "500 random in [1, K]: " +
                  (bounded ? "yes" : "no")};
}

Outcome clip_endpoints() {
  const MatrixXd img = MatrixXd::Identity(4, 4);
  MatrixXd orth = MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) orth(i, (i + 1) % 4) = 1;
  const double same = clip_score(img, img);
  const double o = clip_score(img, orth);
  const double anti = clip_score(img, MatrixXd(-img));
  const bool ok = std::abs(same - 100) <= 1e-9 && std::abs(o) <= 1e-9 && std::abs(anti) <= 1e-9;
  return {ok, fmt("identical %.12f, ", same) + fmt("orthogonal %.3g, ", o) + fmt("anti-parallel %.3g", anti)};
}

Outcome geometry_properties() {
  SplitMix64 rng(9);
  bool iou_ok = true;
  for (int i = 0; i < 20000; ++i) {
    const NormBox a = testing::random_box(rng);
    const NormBox b = testing::random_box(rng);
    const double ab = iou(a, b);
    iou_ok = iou_ok && ab == iou(b, a) && ab >= 0 && ab <= 1 && std::abs(iou(a, a) - 1) <= 1e-12;
    // Shift b clear of a: disjoint.
    const NormBox far{a.cx + a.w / 2 + b.w / 2 + 1e-6, b.cy, b.w, b.h};
    iou_ok = iou_ok && iou(a, far) == 0.0;
  }
  double identity_err = 0;
  double compose_err = 0;
  for (int i = 0; i < 10000; ++i) {
    const double W = 100 + rng.below(2000);
    const double H = 100 + rng.below(2000);
    const double w = 0.01 + 0.5 * rng.uniform01();
    const double h = 0.01 + 0.5 * rng.uniform01();
    const NormBox box{w / 2 + (1 - w) * rng.uniform01(), h / 2 + (1 - h) * rng.uniform01(), w, h};
    const auto same = remap_crop(box, W, H, PixelRect{0, 0, W, H}, 0.25);
    identity_err = std::max({identity_err, std::abs(same->cx - box.cx), std::abs(same->cy - box.cy),
                             std::abs(same->w - box.w), std::abs(same->h - box.h)});

    const PixelRect c1{rng.uniform01() * W / 4, rng.uniform01() * H / 4, W / 2, H / 2};
    const PixelRect c2{rng.uniform01() * c1.w / 4, rng.uniform01() * c1.h / 4, c1.w / 2, c1.h / 2};
    const PixelRect both{c1.x0 + c2.x0, c1.y0 + c2.y0, c2.w, c2.h};
    const double bw = (0.05 + 0.9 * rng.uniform01()) * c2.w;
    const double bh = (0.05 + 0.9 * rng.uniform01()) * c2.h;
    const double bx = both.x0 + rng.uniform01() * (c2.w - bw);
    const double by = both.y0 + rng.uniform01() * (c2.h - bh);
    const NormBox inner{(bx + bw / 2) / W, (by + bh / 2) / H, bw / W, bh / H};
    const auto twice = remap_crop(*remap_crop(inner, W, H, c1, 0.0), c1.w, c1.h, c2, 0.0);
    const auto direct = remap_crop(inner, W, H, both, 0.0);
    compose_err = std::max({compose_err, std::abs(twice->cx - direct->cx), std::abs(twice->cy - direct->cy),
                            std::abs(twice->w - direct->w), std::abs(twice->h - direct->h)});
  }
  const bool ok = iou_ok && identity_err <= 1e-9 && compose_err <= 1e-9;
  return {ok, std::string("iou props on 2e4 pairs: ") + (iou_ok ? "ok" : "broken") +
                  fmt(", identity err %.2g", identity_err) + fmt(", composition err %.2g (tol 1e-9)", compose_err)};
}

Outcome hybrid_bookkeeping() {
  DatasetManifest real;
  real.class_names = {"thyroid_cartilage", "strap_muscle", "cricoid_cartilage",
                      "thyroid_lobe",      "vocal_fold",   "tracheal_ring"};
  // 6864 images, long-tailed, some with two classes.
  const std::size_t per_class[] = {3000, 1800, 1000, 600, 300, 164};
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < per_class[c]; ++i) {
      std::vector<Annotation> anns = {testing::ann(c)};
      if (c == 0 && i % 10 == 0) anns.push_back(testing::ann(1, 0.2, 0.2, 0.1, 0.1));
      real.entries.push_back(testing::make_entry("us_" + std::to_string(c) + "_" + std::to_string(i), anns));
    }
  }
  DatasetManifest synth;
  synth.class_names = real.class_names;
  for (std::size_t c : {5u, 4u}) {
    for (int i = 0; i < 300; ++i) {
      synth.entries.push_back(testing::make_entry("sdxl_" + std::to_string(c) + "_" + std::to_string(i),
                                                  {testing::ann(c, 0.5, 0.5, 0.3, 0.2)}, Provenance::kSynthetic,
                                                  512, 512));
    }
  }
  const auto real_d = class_distribution(real);
  const auto targets = balance_targets(real_d, real.class_names,
                                       FixedPerClass{300, {"tracheal_ring", "vocal_fold"}});
  const DatasetManifest hybrid = mix(real, synth, targets, 2025);
  const auto hd = class_distribution(hybrid);
  bool counts_ok = hd.total_images == 7464;
  for (std::size_t c = 0; c < 6; ++c) {
    counts_ok = counts_ok && hd.instance_count[c] == real_d.instance_count[c] + targets.synth_count[c] &&
                hd.image_count[c] == real_d.image_count[c] + targets.synth_count[c];
  }
  const auto s = provenance_summary(hybrid);
  const bool ok = counts_ok && s.real == 6864 && s.synthetic == 600 && validate_manifest(hybrid).ok();
  return {ok, "entries " + std::to_string(hybrid.entries.size()) + ", provenance {real: " + std::to_string(s.real) +
                  ", synthetic: " + std::to_string(s.synthetic) + "}, per-class counts " +
                  (counts_ok ? "match" : "differ") + " (exact)"};
}

Outcome determinism() {
  const auto ws = testing::make_workspace("acceptance");
  const auto a = testing::randomized_commands(ws, ws.root / "run_a");
  const auto b = testing::randomized_commands(ws, ws.root / "run_b");
  std::size_t files = 0;
  std::string mismatch;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ra = testing::run_tool(a[i].args);
    const auto rb = testing::run_tool(b[i].args);
    if (ra.code != 0 || rb.code != 0) {
      mismatch += a[i].name + " failed: " + ra.err;
      continue;
    }
    for (std::size_t k = 0; k < a[i].outputs.size(); ++k) {
      ++files;
      const auto x = testing::read_text(a[i].outputs[k]);
      if (x.empty() || x != testing::read_text(b[i].outputs[k])) mismatch += a[i].name + " ";
    }
  }
  fs::remove_all(ws.root);
  return {mismatch.empty(), std::to_string(a.size()) + " commands, " + std::to_string(files) +
                                " output files byte-identical" + (mismatch.empty() ? "" : "; differs: " + mismatch)};
}

Outcome round_trip() {
  SplitMix64 rng(12);
  int manifests = 0;
  int labels = 0;
  bool ok = true;
  while (manifests < 100) {
    const DatasetManifest m = testing::random_manifest(rng);
    std::map<std::string, std::string> files;
    for (const auto& e : m.entries) {
      const std::string text = format_label_file(e.annotations);
      ok = ok && parse_label_file(text, m.num_classes()) == e.annotations &&
           format_label_file(parse_label_file(text, m.num_classes())) == text;
      files[e.label_file] = text;
      ++labels;
    }
    const std::string text = serialize_manifest(m);
    const auto back = load_manifest(text, [&](const std::string& name) -> std::optional<std::string> {
      const auto it = files.find(name);
      if (it == files.end()) return std::nullopt;
      return it->second;
    });
    ok = ok && back == m && serialize_manifest(back) == text;
    ++manifests;
  }
  return {ok, std::to_string(manifests) + " manifests, " + std::to_string(labels) +
                  " label files, structurally equal (exact)"};
}

}  // namespace

int main() {
  report(1, "CAS uniformity", 5, cas_uniformity);
  report(2, "RFS expectation", 30, rfs_expectation);
  report(3, "RFS degeneracy", 0, rfs_degeneracy);
  report(4, "AP oracle equivalence", 10, ap_oracle);
  report(5, "Perfect-detector identity", 0, perfect_detector);
  report(6, "FID closed forms", 0, fid_closed_forms);
  report(7, "IS bounds and endpoints", 0, is_bounds);
  report(8, "CLIP-score endpoints", 0, clip_endpoints);
  report(9, "Geometry", 0, geometry_properties);
  report(10, "Hybrid bookkeeping", 0, hybrid_bookkeeping);
  report(11, "Determinism", 0, determinism);
  report(12, "Round-trip parsing", 0, round_trip);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
