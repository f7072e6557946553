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
#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "support/det_fixtures.hpp"
#include "tailkit/error.hpp"
#include "tailkit/eval_det.hpp"

namespace tailkit {
namespace {

using testing::ann;
using testing::make_entry;

GroundTruthBoxes one_gt() { return {{"img", {NormBox{0.5, 0.5, 0.2, 0.2}}}}; }

TEST(MatchDetections, PerfectMatch) {
  const std::vector<Detection> dets = {{"img", 0, NormBox{0.5, 0.5, 0.2, 0.2}, 0.7}};
  const auto r = match_detections(dets, one_gt(), 0, 0.5);
  EXPECT_EQ(r.n_gt, 1u);
  EXPECT_EQ(r.matches, (std::vector<ScoredMatch>{{0.7, true}}));
}

TEST(MatchDetections, HigherConfidenceMissComesFirst) {
  const std::vector<Detection> dets = {{"img", 0, NormBox{0.1, 0.1, 0.1, 0.1}, 0.9},
                                       {"img", 0, NormBox{0.5, 0.5, 0.2, 0.2}, 0.8}};
  const auto r = match_detections(dets, one_gt(), 0, 0.5);
  EXPECT_EQ(r.matches, (std::vector<ScoredMatch>{{0.9, false}, {0.8, true}}));
}

TEST(MatchDetections, NoGroundTruth) {
  const std::vector<Detection> dets = {{"img", 0, NormBox{0.5, 0.5, 0.2, 0.2}, 0.4}};
  const auto r = match_detections(dets, GroundTruthBoxes{}, 0, 0.5);
  EXPECT_EQ(r.n_gt, 0u);
  EXPECT_EQ(r.matches, (std::vector<ScoredMatch>{{0.4, false}}));
}

TEST(MatchDetections, EachGroundTruthMatchedOnce) {
  const std::vector<Detection> dets = {{"img", 0, NormBox{0.5, 0.5, 0.2, 0.2}, 0.9},
                                       {"img", 0, NormBox{0.5, 0.5, 0.2, 0.2}, 0.8}};
  const auto r = match_detections(dets, one_gt(), 0, 0.5);
  EXPECT_EQ(r.matches, (std::vector<ScoredMatch>{{0.9, true}, {0.8, false}}));
}

TEST(MatchDetections, PicksHighestIouAmongUnmatched) {
  const GroundTruthBoxes gts = {{"img", {NormBox{0.40, 0.5, 0.2, 0.2}, NormBox{0.45, 0.5, 0.2, 0.2}}}};
  const std::vector<Detection> dets = {{"img", 0, NormBox{0.46, 0.5, 0.2, 0.2}, 0.9},
                                       {"img", 0, NormBox{0.46, 0.5, 0.2, 0.2}, 0.8}};
  const auto r = match_detections(dets, gts, 0, 0.3);
  EXPECT_EQ(r.matches, (std::vector<ScoredMatch>{{0.9, true}, {0.8, true}}));
}

TEST(MatchDetectionsProperty, AgreesWithOracle) {
  SplitMix64 rng(1001);
  for (int i = 0; i < 500; ++i) {
    const auto mi = testing::micro_instance(rng);
    for (std::size_t c = 0; c < mi.gt.num_classes(); ++c) {
      GroundTruthBoxes gts;
      for (const auto& e : mi.gt.entries) {
        for (const auto& a : e.annotations) {
          if (a.class_id == c) gts[e.id].push_back(a.box);
        }
      }
      for (double t : {0.3, 0.5, 0.75, 0.95}) {
        const auto got = match_detections(mi.dets, gts, c, t);
        const auto want = oracle::match_class(mi.oracle_dets, mi.oracle_gt, c, t);
        ASSERT_EQ(got.matches.size(), want.tp.size());
        EXPECT_EQ(static_cast<long>(got.n_gt), want.n_gt);
        for (std::size_t k = 0; k < want.tp.size(); ++k) {
          EXPECT_EQ(got.matches[k].true_positive, want.tp[k]);
        }
      }
    }
  }
}

TEST(AveragePrecision, Examples) {
  EXPECT_EQ(average_precision(std::vector<ScoredMatch>{{0.9, true}}, 1), 1.0);
  EXPECT_NEAR(*average_precision(std::vector<ScoredMatch>{{0.9, false}, {0.8, true}}, 1), 0.5, 1e-15);
  EXPECT_EQ(average_precision(std::vector<ScoredMatch>{}, 5), 0.0);
}

TEST(AveragePrecision, NoGroundTruth) {
  EXPECT_EQ(average_precision(std::vector<ScoredMatch>{{0.3, false}}, 0), 0.0);
  EXPECT_FALSE(average_precision(std::vector<ScoredMatch>{}, 0).has_value());
  EXPECT_THROW(average_precision(std::vector<ScoredMatch>{}, -1), ArgumentError);
}

TEST(AveragePrecision, HalfRecall) {
  // Recall 0.5 at precision 1: 51 of 101 grid points.
  EXPECT_NEAR(*average_precision(std::vector<ScoredMatch>{{0.9, true}}, 2), 51.0 / 101.0, 1e-15);
}

TEST(AveragePrecision, TiesKeepInputOrder) {
  const std::vector<ScoredMatch> fp_first = {{0.5, false}, {0.5, true}};
  const std::vector<ScoredMatch> tp_first = {{0.5, true}, {0.5, false}};
  EXPECT_NEAR(*average_precision(fp_first, 1), 0.5, 1e-15);
  EXPECT_EQ(*average_precision(tp_first, 1), 1.0);
}

std::vector<ScoredMatch> random_matches(SplitMix64& rng, std::size_t n) {
  std::vector<ScoredMatch> m;
  for (std::size_t i = 0; i < n; ++i) m.push_back({rng.uniform01(), rng.below(2) == 0});
  return m;
}

TEST(AveragePrecisionProperty, AgreesWithOracleAndStaysInRange) {
  SplitMix64 rng(55);
  for (int i = 0; i < 2000; ++i) {
    auto m = random_matches(rng, rng.below(30));
    long tps = std::count_if(m.begin(), m.end(), [](const ScoredMatch& s) { return s.true_positive; });
    const long n_gt = tps + static_cast<long>(rng.below(5));
    const auto ap = average_precision(m, n_gt);
    std::vector<double> conf;
    for (const auto& s : m) conf.push_back(s.confidence);
    oracle::Ranked ranked;
    ranked.n_gt = n_gt;
    for (std::size_t idx : oracle::rank_order(conf)) ranked.tp.push_back(m[idx].true_positive);
    const auto want = oracle::ap(ranked);
    ASSERT_EQ(ap.has_value(), want.has_value());
    if (!ap) continue;
    EXPECT_NEAR(*ap, *want, 1e-12);
    EXPECT_GE(*ap, 0.0);
    EXPECT_LE(*ap, 1.0);
  }
}

TEST(AveragePrecisionProperty, InvariantUnderMonotoneConfidenceMaps) {
  SplitMix64 rng(56);
  for (int i = 0; i < 500; ++i) {
    auto m = random_matches(rng, 1 + rng.below(25));
    const long n_gt = 1 + static_cast<long>(rng.below(20));
    auto squashed = m;
    for (auto& s : squashed) s.confidence = std::exp(3 * s.confidence) / (1 + std::exp(3 * s.confidence));
    EXPECT_EQ(average_precision(m, n_gt), average_precision(squashed, n_gt));
  }
}

TEST(AveragePrecisionProperty, ExtraFalsePositiveNeverHelps) {
  SplitMix64 rng(57);
  for (int i = 0; i < 500; ++i) {
    auto m = random_matches(rng, 1 + rng.below(25));
    const long n_gt = static_cast<long>(m.size()) + 1;
    const double before = *average_precision(m, n_gt);
    auto with_dup = m;
    const auto& src = m[rng.below(m.size())];
    with_dup.push_back({src.confidence, false});
    EXPECT_LE(*average_precision(with_dup, n_gt), before + 1e-15);
  }
}

TEST(InterpolatedPrecision, NonIncreasing) {
  SplitMix64 rng(58);
  for (int i = 0; i < 300; ++i) {
    const auto p = interpolated_precision(random_matches(rng, rng.below(30)), 10);
    ASSERT_EQ(p.size(), kRecallPoints);
    for (std::size_t k = 1; k < p.size(); ++k) EXPECT_LE(p[k], p[k - 1]);
  }
}

TEST(DefaultThresholds, TenStepsFromHalf) {
  const auto t = default_iou_thresholds();
  ASSERT_EQ(t.size(), 10u);
  EXPECT_DOUBLE_EQ(t.front(), 0.5);
  EXPECT_DOUBLE_EQ(t.back(), 0.95);
}

DatasetManifest two_class_gt() {
  DatasetManifest m;
  m.class_names = {"vocal_fold", "tracheal_ring"};
  m.entries = {make_entry("a", {ann(0, 0.3, 0.3, 0.2, 0.2), ann(1, 0.7, 0.7, 0.1, 0.3)}),
               make_entry("b", {ann(1, 0.5, 0.5, 0.4, 0.2)})};
  return m;
}

std::vector<Detection> perfect(const DatasetManifest& m) {
  std::vector<Detection> dets;
  for (const auto& e : m.entries) {
    for (const auto& a : e.annotations) dets.push_back({e.id, a.class_id, a.box, 1.0});
  }
  return dets;
}

TEST(MapRange, PerfectDetectorScoresOne) {
  const auto gt = two_class_gt();
  const auto r = map_range(perfect(gt), gt);
  EXPECT_EQ(r.map50_95, 1.0);
  for (const auto& c : r.classes) {
    for (const auto& ap : c.ap) EXPECT_EQ(ap, 1.0);
  }
}

TEST(MapRange, NoDetectionsScoresZero) {
  const auto r = map_range(std::vector<Detection>{}, two_class_gt());
  EXPECT_EQ(r.map50_95, 0.0);
  EXPECT_EQ(r.classes_in_mean, 2u);
}

TEST(MapRange, ClassWithoutDetectionsPullsMeanDown) {
  const auto gt = two_class_gt();
  auto dets = perfect(gt);
  std::erase_if(dets, [](const Detection& d) { return d.class_id == 1; });
  const auto r = map_range(dets, gt);
  EXPECT_EQ(r.classes[1].ap50_95, 0.0);
  EXPECT_DOUBLE_EQ(r.map50_95, 0.5);
}

TEST(MapRange, AbsentClassesLeaveTheMean) {
  auto gt = two_class_gt();
  gt.class_names.push_back("ghost");
  const auto r = map_range(perfect(gt), gt);
  EXPECT_FALSE(r.classes[2].ap50_95.has_value());
  EXPECT_EQ(r.classes_in_mean, 2u);
  EXPECT_EQ(r.map50_95, 1.0);
  // A detection for a class without ground truth scores 0 yet stays out of the mean.
  auto dets = perfect(gt);
  dets.push_back({"a", 2, NormBox{0.5, 0.5, 0.1, 0.1}, 0.3});
  const auto r2 = map_range(dets, gt);
  EXPECT_EQ(r2.classes[2].ap50_95, 0.0);
  EXPECT_EQ(r2.map50_95, 1.0);
}

TEST(MapRange, Errors) {
  DatasetManifest empty;
  empty.class_names = {"a"};
  empty.entries = {make_entry("x", {})};
  EXPECT_THROW(map_range(std::vector<Detection>{}, empty), ValidationError);
  const std::vector<double> bad = {0.0};
  EXPECT_THROW(map_range(std::vector<Detection>{}, two_class_gt(), bad), ArgumentError);
  const std::vector<Detection> unknown = {{"a", 7, NormBox{0.5, 0.5, 0.1, 0.1}, 0.3}};
  EXPECT_THROW(map_range(unknown, two_class_gt()), ValidationError);
}

TEST(MapRangeProperty, AgreesWithBruteForce) {
  SplitMix64 rng(4242);
  const auto thresholds = default_iou_thresholds();
  for (int i = 0; i < 1000; ++i) {
    const auto mi = testing::micro_instance(rng);
    const auto got = map_range(mi.dets, mi.gt);
    const auto want = oracle::evaluate(mi.oracle_dets, mi.oracle_gt, mi.gt.num_classes(), thresholds);
    EXPECT_NEAR(got.map50_95, want.map, 1e-9);
    for (std::size_t c = 0; c < mi.gt.num_classes(); ++c) {
      ASSERT_EQ(got.classes[c].ap50_95.has_value(), want.class_ap[c].has_value());
      if (want.class_ap[c]) EXPECT_NEAR(*got.classes[c].ap50_95, *want.class_ap[c], 1e-9);
    }
  }
}

TEST(MapRangeProperty, LooserThresholdNeverHurts) {
  SplitMix64 rng(909);
  for (int i = 0; i < 500; ++i) {
    const auto mi = testing::micro_instance(rng);
    const auto r = map_range(mi.dets, mi.gt);
    for (const auto& c : r.classes) {
      if (!c.ap50_95) continue;
      for (std::size_t k = 1; k < c.ap.size(); ++k) EXPECT_GE(*c.ap[k - 1] + 1e-15, *c.ap[k]);
    }
  }
}

TEST(MapRangeProperty, InvariantToClassOrder) {
  SplitMix64 rng(910);
  for (int i = 0; i < 300; ++i) {
    auto mi = testing::micro_instance(rng);
    const std::size_t n = mi.gt.num_classes();
    if (n < 2) continue;
    // Reverse the class list and relabel everything.
    auto flip = [n](std::size_t c) { return n - 1 - c; };
    DatasetManifest gt = mi.gt;
    std::reverse(gt.class_names.begin(), gt.class_names.end());
    for (auto& e : gt.entries) {
      for (auto& a : e.annotations) a.class_id = flip(a.class_id);
    }
    auto dets = mi.dets;
    for (auto& d : dets) d.class_id = flip(d.class_id);
    EXPECT_NEAR(map_range(mi.dets, mi.gt).map50_95, map_range(dets, gt).map50_95, 1e-15);
  }
}

TEST(DetTable, PercentRowsAndAbsent) {
  auto gt = two_class_gt();
  gt.class_names.push_back("ghost");
  const std::string table = format_det_table(map_range(perfect(gt), gt), true);
  EXPECT_NE(table.find("all classes"), std::string::npos);
  EXPECT_NE(table.find("100"), std::string::npos);
  EXPECT_NE(table.find("absent"), std::string::npos);
}

TEST(ParseDetections, JsonLines) {
  const auto dets = parse_detections_jsonl(
      R"({"image_id":"a","class_id":1,"cx":0.5,"cy":0.5,"w":0.2,"h":0.1,"conf":0.75})"
      "\n\n"
      R"({"image_id":"b","class_id":0,"cx":0.1,"cy":0.2,"w":0.1,"h":0.1,"conf":1})"
      "\n");
  ASSERT_EQ(dets.size(), 2u);
  EXPECT_EQ(dets[0].image_id, "a");
  EXPECT_EQ(dets[0].class_id, 1u);
  EXPECT_EQ(dets[0].box, (NormBox{0.5, 0.5, 0.2, 0.1}));
  EXPECT_EQ(dets[1].confidence, 1.0);
}

TEST(ParseDetections, Errors) {
  try {
    parse_detections_jsonl("{\"image_id\":\"a\"}\n{broken\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(parse_detections_jsonl(
                   R"({"image_id":"a","class_id":0,"cx":0.5,"cy":0.5,"w":0.2,"h":0.1,"conf":1.5})"),
               ValidationError);
}

}  // namespace
}  // namespace tailkit
