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
#include "tailkit/json_io.hpp"

namespace tailkit {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json box_json(const NormBox& b) { return json::array({b.cx, b.cy, b.w, b.h}); }

json rect_json(const PixelRect& r) {
  return json{{"x0", r.x0}, {"y0", r.y0}, {"w", r.w}, {"h", r.h}};
}

}  // namespace

json plan_to_json(const EpochPlan& plan) {
  return json{{"strategy", to_string(plan.strategy)},
              {"seed", plan.seed},
              {"batch_size", plan.batch_size},
              {"batches", plan.batches}};
}

EpochPlan plan_from_json(const json& doc) {
  try {
    EpochPlan plan;
    const auto strategy = parse_strategy(doc.at("strategy").get<std::string>());
    if (!strategy) throw ValidationError("unknown plan strategy");
    plan.strategy = *strategy;
    plan.seed = doc.at("seed").get<std::uint64_t>();
    plan.batch_size = doc.at("batch_size").get<std::size_t>();
    plan.batches = doc.at("batches").get<std::vector<std::vector<std::string>>>();
    return plan;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed plan file: ") + e.what());
  }
}

json distribution_to_json(const ClassDistribution& d, std::span<const std::string> class_names) {
  json classes = json::array();
  for (std::size_t c = 0; c < d.num_classes(); ++c) {
    classes.push_back({{"class_id", c},
                       {"name", class_names[c]},
                       {"instances", d.instance_count[c]},
                       {"images", d.image_count[c]}});
  }
  return json{{"total_images", d.total_images},
              {"total_instances", d.total_instances},
              {"classes", std::move(classes)}};
}

json imbalance_to_json(const ImbalanceReport& r) {
  json classes = json::array();
  for (const auto& c : r.classes) {
    classes.push_back({{"class_id", c.class_id},
                       {"name", c.name},
                       {"instances", c.instances},
                       {"images", c.images},
                       {"image_frequency", c.image_frequency}});
  }
  return json{{"total_images", r.total_images},
              {"total_instances", r.total_instances},
              {"imbalance_ratio", r.imbalance_ratio},
              {"classes", std::move(classes)}};
}

json mosaic_to_json(const MosaicPlan& plan) {
  json placements = json::array();
  for (const auto& p : plan.placements) {
    placements.push_back({{"source_id", p.source_id},
                          {"quadrant", rect_json(p.quadrant)},
                          {"scale", json::array({p.scale_x, p.scale_y})},
                          {"offset", json::array({p.offset_x, p.offset_y})}});
  }
  json annotations = json::array();
  for (std::size_t i = 0; i < plan.annotations.size(); ++i) {
    annotations.push_back({{"class_id", plan.annotations[i].class_id},
                           {"box", box_json(plan.annotations[i].box)},
                           {"source", plan.annotation_source[i]}});
  }
  return json{{"type", "mosaic"},
              {"output_size", plan.output_size},
              {"center", json::array({plan.center_x, plan.center_y})},
              {"placements", std::move(placements)},
              {"annotations", std::move(annotations)}};
}

json mixup_to_json(const MixupPlan& plan) {
  json annotations = json::array();
  for (const auto& w : plan.annotations) {
    annotations.push_back({{"class_id", w.annotation.class_id},
                           {"box", box_json(w.annotation.box)},
                           {"weight", w.weight},
                           {"source", w.source}});
  }
  return json{{"type", "mixup"},
              {"sources", json::array({plan.id_a, plan.id_b})},
              {"lambda", plan.lambda},
              {"annotations", std::move(annotations)}};
}

json provenance_to_json(const ProvenanceSummary& s) {
  json classes = json::array();
  for (std::size_t c = 0; c < s.class_names.size(); ++c) {
    classes.push_back(
        {{"name", s.class_names[c]},
         {"real",
          {{"images", s.real_per_class[c].images}, {"instances", s.real_per_class[c].instances}}},
         {"synthetic",
          {{"images", s.synthetic_per_class[c].images},
           {"instances", s.synthetic_per_class[c].instances}}}});
  }
  return json{{"real", s.real}, {"synthetic", s.synthetic}, {"classes", std::move(classes)}};
}

json det_report_to_json(const DetEvalReport& r, bool curves) {
  json classes = json::array();
  for (const auto& c : r.classes) {
    json ap = json::array();
    for (const auto& v : c.ap) ap.push_back(optional_number(v));
    json entry{{"class_id", c.class_id},
               {"name", c.name},
               {"ground_truth", c.n_gt},
               {"images", c.n_images},
               {"detections", c.n_det},
               {"absent", !c.ap50_95.has_value()},
               {"ap", std::move(ap)},
               {"ap50_95", optional_number(c.ap50_95)}};
    if (curves) entry["precision_curves"] = c.precision_curves;
    classes.push_back(std::move(entry));
  }
  json doc{{"iou_thresholds", r.thresholds},
           {"map_per_threshold", r.map_per_threshold},
           {"map50_95", r.map50_95},
           {"classes_in_mean", r.classes_in_mean},
           {"classes", std::move(classes)}};
  if (curves) doc["recall_grid"] = recall_grid();
  return doc;
}

std::string to_text(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace tailkit
