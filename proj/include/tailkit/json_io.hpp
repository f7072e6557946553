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

#include <string>

#include <json.hpp>

#include "tailkit/augment.hpp"
#include "tailkit/eval_det.hpp"
#include "tailkit/hybrid.hpp"
#include "tailkit/sampling.hpp"
#include "tailkit/stats.hpp"

namespace tailkit {

// JSON documents written by the command-line tool. Key names and order are
// stable; doubles use the shortest representation that round-trips.

/// {"strategy", "seed", "batch_size", "batches": [[id, ...], ...]}
nlohmann::json plan_to_json(const EpochPlan& plan);
EpochPlan plan_from_json(const nlohmann::json& doc);

nlohmann::json distribution_to_json(const ClassDistribution& d,
                                    std::span<const std::string> class_names);
nlohmann::json imbalance_to_json(const ImbalanceReport& r);

nlohmann::json mosaic_to_json(const MosaicPlan& plan);
nlohmann::json mixup_to_json(const MixupPlan& plan);

/// {"real": n, "synthetic": n, "classes": [{"name", "real": {...}, "synthetic": {...}}]}
nlohmann::json provenance_to_json(const ProvenanceSummary& s);

/// Absent values are written as null. `curves` adds the 101-point
/// interpolated precision per class and threshold.
nlohmann::json det_report_to_json(const DetEvalReport& r, bool curves);

/// Two-space indented dump with a trailing newline.
std::string to_text(const nlohmann::json& doc);

}  // namespace tailkit
