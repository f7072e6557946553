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
#include "tailkit/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailkit/augment.hpp"
#include "tailkit/dataset.hpp"
#include "tailkit/eval_det.hpp"
#include "tailkit/eval_gen.hpp"
#include "tailkit/geometry.hpp"
#include "tailkit/hybrid.hpp"
#include "tailkit/json_io.hpp"
#include "tailkit/matrix_io.hpp"
#include "tailkit/random.hpp"
#include "tailkit/sampling.hpp"
#include "tailkit/stats.hpp"

namespace tailkit {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::array<std::string_view, 7> kCommands = {
    "analyze", "plan", "mix", "remap", "augment", "eval-det", "eval-gen"};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + " is not valid JSON: " + e.what());
  }
}

// Temp file in the same directory, then rename over the target.
void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void emit(const std::string& out_path, const std::string& content, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << content;
  } else {
    write_atomic(out_path, content);
  }
}

// Label paths are stored relative to the manifest that references them;
// moving entries into a manifest elsewhere needs them re-expressed.
std::string rebase_label(const std::string& label, const fs::path& from_dir,
                         const fs::path& to_dir) {
  fs::path p(label);
  if (p.is_relative()) p = from_dir / p;
  p = fs::weakly_canonical(fs::absolute(p));
  const fs::path target = fs::weakly_canonical(fs::absolute(to_dir));
  const fs::path rel = p.lexically_relative(target);
  return rel.empty() ? p.generic_string() : rel.generic_string();
}

fs::path dir_of(const fs::path& file) {
  return file.has_parent_path() ? file.parent_path() : fs::path(".");
}

// Appends `--key value` for every config key not already given on the
// command line, so explicit flags win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> config_path;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (!config_path) return kept;

  const json cfg = read_json_file(*config_path);
  if (!cfg.is_object()) throw ValidationError("config file must hold a JSON object");
  auto given = [&](const std::string& flag) {
    return std::any_of(kept.begin(), kept.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) kept.push_back(flag);
    } else if (value.is_array()) {
      kept.push_back(flag);
      for (const json& v : value) kept.push_back(scalar(v));
    } else if (!value.is_null()) {
      kept.push_back(flag);
      kept.push_back(scalar(value));
    }
  }
  return kept;
}

std::string error_json(const std::string& kind, const std::string& message,
                       const std::string& subject) {
  json body{{"kind", kind}, {"message", message}};
  if (!subject.empty()) body["subject"] = subject;
  return json{{"error", body}}.dump() + "\n";
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string manifest;
  std::string out;
  std::string table;
};

void run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const DatasetManifest m = load_manifest_file(a.manifest);
  const ClassDistribution d = class_distribution(m);
  const ImbalanceReport r = imbalance_report(d, m.class_names);
  const json doc{{"distribution", distribution_to_json(d, m.class_names)},
                 {"imbalance", imbalance_to_json(r)}};
  emit(a.out, to_text(doc), out);
  if (!a.table.empty()) emit(a.table, format_imbalance_table(r), out);
}

// --- plan ------------------------------------------------------------------

struct PlanArgs {
  std::string strategy;
  std::string manifest;
  std::size_t batch = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> epoch_length;
  double threshold = 0.01;
  std::string rounding = "stochastic";
  std::string out;
};

void run_plan(const PlanArgs& a, std::ostream& out) {
  const DatasetManifest m = load_manifest_file(a.manifest);
  const auto strategy = parse_strategy(a.strategy);
  if (!strategy) throw ArgumentError("unknown strategy \"" + a.strategy + "\"");
  EpochPlan plan;
  switch (*strategy) {
    case Strategy::kBaseline:
      plan = baseline_plan(m, a.batch, a.seed);
      break;
    case Strategy::kRfs:
      plan = rfs_plan(m, a.threshold, a.batch, a.seed,
                      a.rounding == "ceil" ? RepeatRounding::kCeil : RepeatRounding::kStochastic);
      break;
    case Strategy::kCas:
      plan = cas_plan(m, a.batch, a.epoch_length, a.seed);
      break;
  }
  emit(a.out, to_text(plan_to_json(plan)), out);
}

// --- mix -------------------------------------------------------------------

struct MixArgs {
  std::string real;
  std::string synth;
  std::uint64_t seed = 0;
  std::optional<std::size_t> fixed;
  std::vector<std::string> classes;
  bool match_max = false;
  std::string manual;
  std::string out;
  std::string summary;
};

void run_mix(const MixArgs& a, std::ostream& out) {
  const DatasetManifest real = load_manifest_file(a.real);
  DatasetManifest synth = load_manifest_file(a.synth);

  const int modes = (a.fixed ? 1 : 0) + (a.match_max ? 1 : 0) + (a.manual.empty() ? 0 : 1);
  if (modes != 1) {
    throw ArgumentError("choose exactly one of --fixed, --match-max, --manual");
  }
  BalanceStrategy strategy;
  if (a.fixed) {
    if (a.classes.empty()) throw ArgumentError("--fixed needs --classes");
    strategy = FixedPerClass{*a.fixed, a.classes};
  } else if (a.match_max) {
    strategy = MatchMax{};
  } else {
    ManualTargets manual;
    const json table = read_json_file(a.manual);
    if (!table.is_object()) throw ValidationError("manual targets must be a JSON object");
    for (const auto& [name, count] : table.items()) {
      if (!count.is_number_unsigned()) {
        throw ValidationError("manual target for \"" + name + "\" must be a non-negative integer",
                              name);
      }
      manual.table[name] = count.get<std::size_t>();
    }
    strategy = std::move(manual);
  }

  const BalanceTargets targets =
      balance_targets(class_distribution(real), real.class_names, strategy);

  const fs::path out_dir = dir_of(a.out);
  DatasetManifest real_rebased = real;
  for (ImageEntry& e : real_rebased.entries) {
    e.label_file = rebase_label(e.label_file, dir_of(a.real), out_dir);
  }
  for (ImageEntry& e : synth.entries) {
    e.label_file = rebase_label(e.label_file, dir_of(a.synth), out_dir);
  }
  const DatasetManifest hybrid = mix(real_rebased, synth, targets, a.seed);
  const ValidationReport report = validate_manifest(hybrid);
  if (!report.ok()) {
    throw ValidationError("hybrid manifest failed validation: " + report.violations[0].message,
                          report.violations[0].entry_id);
  }

  if (a.out.empty()) throw ArgumentError("--out is required");
  write_atomic(a.out, serialize_manifest(hybrid));
  emit(a.summary, to_text(provenance_to_json(provenance_summary(hybrid))), out);
}

// --- remap -----------------------------------------------------------------

struct RemapArgs {
  std::string manifest;
  std::string crops;
  double min_visible = 0.25;
  std::vector<int> resize;
  std::string out;
  std::string labels_dir;
};

std::string label_name(const std::string& id) {
  std::string name = id;
  for (char& c : name) {
    if (c == '/' || c == '\\' || c == ':') c = '_';
  }
  return name + ".txt";
}

void run_remap(const RemapArgs& a, std::ostream& out) {
  DatasetManifest m = load_manifest_file(a.manifest);
  const json crops = read_json_file(a.crops);
  if (!crops.is_object()) throw ValidationError("crops file must map entry ids to rectangles");
  if (!a.resize.empty() && a.resize.size() != 1 && a.resize.size() != 2) {
    throw ArgumentError("--resize takes N or W H");
  }
  if (std::any_of(a.resize.begin(), a.resize.end(), [](int v) { return v < 1; })) {
    throw ArgumentError("--resize dimensions must be positive");
  }

  for (const auto& [id, _] : crops.items()) {
    if (std::none_of(m.entries.begin(), m.entries.end(),
                     [&](const ImageEntry& e) { return e.id == id; })) {
      throw ValidationError("crop given for unknown entry \"" + id + "\"", id);
    }
  }

  const fs::path out_dir = dir_of(a.out);
  const fs::path labels_dir = a.labels_dir.empty() ? out_dir / "labels" : fs::path(a.labels_dir);
  std::size_t boxes_in = 0;
  std::size_t boxes_kept = 0;
  std::vector<std::pair<fs::path, std::string>> label_files;
  std::unordered_set<std::string> names;

  for (ImageEntry& e : m.entries) {
    PixelRect crop{0, 0, static_cast<double>(e.width_px), static_cast<double>(e.height_px)};
    if (const auto it = crops.find(e.id); it != crops.end()) {
      try {
        crop = {it->at("x0").get<double>(), it->at("y0").get<double>(), it->at("w").get<double>(),
                it->at("h").get<double>()};
      } catch (const json::exception&) {
        throw ValidationError("crop for \"" + e.id + "\" needs numeric x0, y0, w, h", e.id);
      }
    }
    std::vector<Annotation> kept;
    for (const Annotation& ann : e.annotations) {
      ++boxes_in;
      auto moved = remap_crop(ann.box, static_cast<double>(e.width_px),
                              static_cast<double>(e.height_px), crop, a.min_visible);
      if (!moved) continue;
      kept.push_back({ann.class_id, resize_invariance_check(*moved)});
    }
    boxes_kept += kept.size();
    e.annotations = std::move(kept);
    e.width_px = static_cast<int>(crop.w);
    e.height_px = static_cast<int>(crop.h);
    if (!a.resize.empty()) {
      e.width_px = a.resize[0];
      e.height_px = a.resize.size() == 2 ? a.resize[1] : a.resize[0];
    }
    const std::string name = label_name(e.id);
    if (!names.insert(name).second) {
      throw ValidationError("label file name collision for entry \"" + e.id + "\"", e.id);
    }
    const fs::path label_path = labels_dir / name;
    e.label_file = rebase_label(label_path.string(), ".", out_dir);
    label_files.emplace_back(label_path, format_label_file(e.annotations));
  }
  if (a.out.empty()) throw ArgumentError("--out is required");
  for (const auto& [path, text] : label_files) write_atomic(path, text);
  write_atomic(a.out, serialize_manifest(m));

  const json summary{{"entries", m.entries.size()},
                     {"boxes_in", boxes_in},
                     {"boxes_kept", boxes_kept},
                     {"boxes_dropped", boxes_in - boxes_kept}};
  out << to_text(summary);
}

// --- augment ---------------------------------------------------------------

struct AugmentArgs {
  std::string manifest;
  std::string mode;
  std::size_t count = 1;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> ids;
  int output_size = 640;
  double min_area = 0.10;
  std::vector<double> center;
  double alpha = kDefaultMixupAlpha;
  std::optional<double> lambda;
  std::string out;
};

void run_augment(const AugmentArgs& a, std::ostream& out) {
  const DatasetManifest m = load_manifest_file(a.manifest);
  if (m.entries.empty()) throw ValidationError("manifest has no entries");
  const bool mosaic = a.mode == "mosaic";
  if (!mosaic && a.mode != "mixup") throw ArgumentError("--mode must be mosaic or mixup");
  const std::size_t group = mosaic ? 4 : 2;
  if (!a.ids.empty() && a.ids.size() != group) {
    throw ArgumentError("--ids needs exactly " + std::to_string(group) + " ids for " + a.mode);
  }
  if (!a.center.empty() && a.center.size() != 2) throw ArgumentError("--center takes fx fy");
  if (!a.seed && (a.ids.empty() || (mosaic && a.center.empty()) || (!mosaic && !a.lambda))) {
    throw ArgumentError("--seed is required for randomized augment plans");
  }

  auto find_entry = [&](const std::string& id) -> const ImageEntry& {
    for (const ImageEntry& e : m.entries) {
      if (e.id == id) return e;
    }
    throw ValidationError("unknown entry \"" + id + "\"", id);
  };

  SplitMix64 rng(a.seed.value_or(0));
  json plans = json::array();
  for (std::size_t k = 0; k < a.count; ++k) {
    std::vector<ImageEntry> chosen;
    if (!a.ids.empty()) {
      for (const std::string& id : a.ids) chosen.push_back(find_entry(id));
    } else {
      for (std::size_t j = 0; j < group; ++j) chosen.push_back(m.entries[rng.below(m.entries.size())]);
    }
    if (mosaic) {
      MosaicOptions options;
      options.output_size = a.output_size;
      options.min_area = a.min_area;
      if (!a.center.empty()) options.center = std::make_pair(a.center[0], a.center[1]);
      plans.push_back(mosaic_to_json(mosaic_labels(chosen, options, rng.next())));
    } else {
      const double lambda = a.lambda ? *a.lambda : rng.beta(a.alpha, a.alpha);
      plans.push_back(mixup_to_json(mixup_labels(chosen[0], chosen[1], lambda)));
    }
  }
  json doc{{"mode", a.mode}, {"plans", std::move(plans)}};
  if (a.seed) doc["seed"] = *a.seed;
  emit(a.out, to_text(doc), out);
}

// --- eval-det --------------------------------------------------------------

struct EvalDetArgs {
  std::string gt;
  std::string dets;
  std::vector<double> thresholds;
  std::string out;
  std::string table;
  bool percent = false;
  bool curves = false;
};

void run_eval_det(const EvalDetArgs& a, std::ostream& out) {
  const DatasetManifest gt = load_manifest_file(a.gt);
  const std::vector<Detection> dets = parse_detections_jsonl(read_file(a.dets));
  const std::vector<double> thresholds =
      a.thresholds.empty() ? default_iou_thresholds() : a.thresholds;
  const DetEvalReport report = map_range(dets, gt, thresholds);
  emit(a.out, to_text(det_report_to_json(report, a.curves)), out);
  // The table follows the report: to --table when given, else to stdout
  // once the JSON has gone to a file.
  if (!a.table.empty()) {
    emit(a.table, format_det_table(report, a.percent), out);
  } else if (!a.out.empty() && a.out != "-") {
    out << format_det_table(report, a.percent);
  }
}

// --- eval-gen --------------------------------------------------------------

struct EvalGenArgs {
  std::string real_features;
  std::string gen_features;
  std::string probs;
  std::string img_emb;
  std::string txt_emb;
  long splits = 1;
  std::string clip_scale = "hundred";
  std::optional<std::uint64_t> seed;
  std::string out;
};

void run_eval_gen(const EvalGenArgs& a, std::ostream& out) {
  if (a.real_features.empty() != a.gen_features.empty()) {
    throw ArgumentError("FID needs both --real-features and --gen-features");
  }
  if (a.img_emb.empty() != a.txt_emb.empty()) {
    throw ArgumentError("CLIP score needs both --img-emb and --txt-emb");
  }
  if (a.real_features.empty() && a.probs.empty() && a.img_emb.empty()) {
    throw ArgumentError("nothing to evaluate");
  }
  if (a.clip_scale != "hundred" && a.clip_scale != "hessel_w") {
    throw ArgumentError("--clip-scale must be hundred or hessel_w");
  }

  json doc = json::object();
  if (!a.real_features.empty()) {
    const auto real = gaussian_stats(read_matrix_file(a.real_features));
    const auto gen = gaussian_stats(read_matrix_file(a.gen_features));
    const auto score = fid(real, gen);
    doc["fid"] = score.value;
    doc["fid_clamped"] = score.clamped;
  }
  if (!a.probs.empty()) {
    if (a.splits > 1 && !a.seed) throw ArgumentError("--seed is required when --splits > 1");
    const auto is = inception_score(read_matrix_file(a.probs), a.splits, a.seed.value_or(0));
    doc["is_mean"] = is.mean;
    doc["is_std"] = is.std;
  }
  if (!a.img_emb.empty()) {
    doc["clip_score"] =
        clip_score(read_matrix_file(a.img_emb), read_matrix_file(a.txt_emb),
                   a.clip_scale == "hundred" ? ClipScale::kHundred : ClipScale::kHesselW);
  }
  emit(a.out, to_text(doc), out);
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long-tail dataset sampling and evaluation toolkit", "tailkit"};
  app.require_subcommand(1, 1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Class distribution and imbalance report");
  analyze_cmd->add_option("--manifest", analyze.manifest, "Manifest JSON")->required();
  analyze_cmd->add_option("--out", analyze.out, "Report JSON path (stdout when omitted)");
  analyze_cmd->add_option("--table", analyze.table, "Also write an aligned text table");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Seeded epoch plan");
  plan_cmd->add_option("--strategy", plan.strategy, "baseline | rfs | cas")
      ->required()
      ->check(CLI::IsMember({"baseline", "rfs", "cas"}));
  plan_cmd->add_option("--manifest", plan.manifest)->required();
  plan_cmd->add_option("--batch", plan.batch, "Batch size")->required();
  plan_cmd->add_option("--seed", plan.seed)->required();
  plan_cmd->add_option("--epoch-length", plan.epoch_length, "CAS slots (default: entry count)");
  plan_cmd->add_option("--threshold", plan.threshold, "RFS threshold t");
  plan_cmd->add_option("--rounding", plan.rounding, "RFS rounding")
      ->check(CLI::IsMember({"stochastic", "ceil"}));
  plan_cmd->add_option("--out", plan.out);

  MixArgs mix_args;
  auto* mix_cmd = app.add_subcommand("mix", "Hybrid real + synthetic manifest");
  mix_cmd->add_option("--real", mix_args.real)->required();
  mix_cmd->add_option("--synth", mix_args.synth)->required();
  mix_cmd->add_option("--seed", mix_args.seed)->required();
  mix_cmd->add_option("--fixed", mix_args.fixed, "Images per listed class");
  mix_cmd->add_option("--classes", mix_args.classes, "Classes for --fixed")->delimiter(',');
  mix_cmd->add_flag("--match-max", mix_args.match_max, "Lift every class to the largest count");
  mix_cmd->add_option("--manual", mix_args.manual, "JSON {class: count}");
  mix_cmd->add_option("--out", mix_args.out, "Hybrid manifest path")->required();
  mix_cmd->add_option("--summary", mix_args.summary, "Provenance summary path (stdout when omitted)");

  RemapArgs remap;
  auto* remap_cmd = app.add_subcommand("remap", "Crop boxes into regions of interest");
  remap_cmd->add_option("--manifest", remap.manifest)->required();
  remap_cmd->add_option("--crops", remap.crops, "JSON {id: {x0, y0, w, h}}")->required();
  remap_cmd->add_option("--min-visible", remap.min_visible);
  remap_cmd->add_option("--resize", remap.resize, "N or W H recorded after the crop")
      ->expected(1, 2);
  remap_cmd->add_option("--out", remap.out, "Output manifest path")->required();
  remap_cmd->add_option("--labels-dir", remap.labels_dir);

  AugmentArgs augment;
  auto* augment_cmd = app.add_subcommand("augment", "Mosaic / mixup label plans");
  augment_cmd->add_option("--manifest", augment.manifest)->required();
  augment_cmd->add_option("--mode", augment.mode)
      ->required()
      ->check(CLI::IsMember({"mosaic", "mixup"}));
  augment_cmd->add_option("--count", augment.count);
  augment_cmd->add_option("--seed", augment.seed);
  augment_cmd->add_option("--ids", augment.ids)->delimiter(',');
  augment_cmd->add_option("--output-size", augment.output_size);
  augment_cmd->add_option("--min-area", augment.min_area);
  augment_cmd->add_option("--center", augment.center)->expected(2);
  augment_cmd->add_option("--alpha", augment.alpha);
  augment_cmd->add_option("--lambda", augment.lambda);
  augment_cmd->add_option("--out", augment.out);

  EvalDetArgs eval_det;
  auto* eval_det_cmd = app.add_subcommand("eval-det", "Per-class AP and mAP50-95");
  eval_det_cmd->add_option("--gt", eval_det.gt, "Ground-truth manifest")->required();
  eval_det_cmd->add_option("--dets", eval_det.dets, "Detections JSON lines")->required();
  eval_det_cmd->add_option("--thresholds", eval_det.thresholds)->delimiter(',');
  eval_det_cmd->add_option("--out", eval_det.out);
  eval_det_cmd->add_option("--table", eval_det.table, "Text table path ('-' for stdout)");
  eval_det_cmd->add_flag("--percent", eval_det.percent);
  eval_det_cmd->add_flag("--curves", eval_det.curves);

  EvalGenArgs eval_gen;
  auto* eval_gen_cmd = app.add_subcommand("eval-gen", "FID, Inception Score, CLIP score");
  eval_gen_cmd->add_option("--real-features", eval_gen.real_features);
  eval_gen_cmd->add_option("--gen-features", eval_gen.gen_features);
  eval_gen_cmd->add_option("--probs", eval_gen.probs);
  eval_gen_cmd->add_option("--img-emb", eval_gen.img_emb);
  eval_gen_cmd->add_option("--txt-emb", eval_gen.txt_emb);
  eval_gen_cmd->add_option("--splits", eval_gen.splits);
  eval_gen_cmd->add_option("--clip-scale", eval_gen.clip_scale);
  eval_gen_cmd->add_option("--seed", eval_gen.seed);
  eval_gen_cmd->add_option("--out", eval_gen.out);

  if (!args.empty() && (args.front() == "-h" || args.front() == "--help")) {
    out << app.help();
    return kExitOk;
  }
  if (args.empty() ||
      std::find(kCommands.begin(), kCommands.end(), args.front()) == kCommands.end()) {
    if (!args.empty()) err << "unknown command \"" << args.front() << "\"\n";
    err << app.help();
    return kExitUsage;
  }

  try {
    std::vector<std::string> argv = merge_config({args.begin(), args.end()});
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << error_json(std::string(to_string(e.kind())), e.what(), "");
    return kExitFailure;
  }

  try {
    if (analyze_cmd->parsed()) run_analyze(analyze, out);
    if (plan_cmd->parsed()) run_plan(plan, out);
    if (mix_cmd->parsed()) run_mix(mix_args, out);
    if (remap_cmd->parsed()) run_remap(remap, out);
    if (augment_cmd->parsed()) run_augment(augment, out);
    if (eval_det_cmd->parsed()) run_eval_det(eval_det, out);
    if (eval_gen_cmd->parsed()) run_eval_gen(eval_gen, out);
  } catch (const ValidationError& e) {
    err << error_json("validation", e.what(), e.subject());
    return kExitFailure;
  } catch (const ConfigurationError& e) {
    err << error_json("configuration", e.what(), e.subject());
    return kExitFailure;
  } catch (const Error& e) {
    err << error_json(std::string(to_string(e.kind())), e.what(), "");
    return kExitFailure;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what(), "");
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace tailkit
