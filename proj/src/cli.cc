/* Copyright 2026 The UW-VOS Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "uwvos/cli.h"

#include <exception>
#include <fstream>
#include <functional>
#include <memory>

#include "CLI11.hpp"
#include "uwvos/attributes.h"
#include "uwvos/error.h"
#include "uwvos/image_io.h"
#include "uwvos/parallel.h"

namespace uwvos {

std::string_view CommandName(Command command) {
  switch (command) {
    case Command::kEvaluate: return "evaluate";
    case Command::kAttributes: return "attributes";
    case Command::kStats: return "stats";
    case Command::kParams: return "params";
    case Command::kGradcheck: return "gradcheck";
    case Command::kSampleSubset: return "sample-subset";
    case Command::kValidate: return "validate";
  }
  return "params";
}

namespace {

Json PathJson(const std::optional<std::filesystem::path>& p) {
  return p ? Json(p->generic_string()) : Json(nullptr);
}

}  // namespace

Json ConfigJson(const RunConfig& c) {
  Json j;
  j["command"] = CommandName(c.command);
  j["format"] = ReportFormatName(c.format);
  switch (c.command) {
    case Command::kEvaluate:
    case Command::kAttributes:
    case Command::kStats:
    case Command::kSampleSubset:
    case Command::kValidate: {
      Json gt = Json::array();
      for (const auto& p : c.gt) gt.push_back(p.generic_string());
      j["gt"] = gt;
      j["split"] = SplitName(c.split);
      break;
    }
    default:
      break;
  }
  switch (c.command) {
    case Command::kEvaluate:
      j["pred"] = PathJson(c.pred);
      j["policy"] = PolicyJson(c.policy);
      break;
    case Command::kAttributes:
      j["sidecar"] = PathJson(c.sidecar);
      j["pred"] = PathJson(c.pred);
      if (c.pred) j["policy"] = PolicyJson(c.policy);
      break;
    case Command::kStats:
      j["taxonomy"] = PathJson(c.taxonomy);
      j["top_k"] = c.top_k;
      j["skip_intensity"] = c.skip_intensity;
      j["length_bin"] = c.length_bin;
      j["mask_bin"] = c.mask_bin;
      j["intensity_bin"] = c.intensity_bin;
      break;
    case Command::kParams:
      j["bias_mode"] = BiasModeName(c.bias_mode);
      j["scg_bias_mode"] = BiasModeName(c.scg_bias_mode);
      j["stage4_only"] = c.stage4_only;
      j["with_da"] = c.with_da;
      j["with_scg"] = c.with_scg;
      break;
    case Command::kGradcheck:
      j["dim"] = c.gradcheck.dim;
      j["positions"] = c.gradcheck.positions;
      j["points"] = c.gradcheck.points;
      j["seed"] = c.gradcheck.seed;
      j["step"] = c.gradcheck.step;
      j["threshold"] = c.gradcheck_threshold;
      break;
    case Command::kSampleSubset:
      j["fraction"] = c.subset.fraction;
      j["seed"] = c.subset.seed;
      j["stratify"] = c.subset.stratify_by_superclass;
      j["taxonomy"] = PathJson(c.taxonomy);
      break;
    case Command::kValidate:
      j["videos"] = c.videos;
      break;
  }
  return j;
}

namespace {

struct Output {
  Json json;
  std::function<std::string()> csv;
  std::function<std::string()> svg;
  int exit_code = kExitOk;
};

void Emit(const RunConfig& config, const Output& output, std::ostream& out) {
  std::string text;
  switch (config.format) {
    case ReportFormat::kJson:
      text = DumpJson(output.json);
      break;
    case ReportFormat::kCsv:
      text = output.csv();
      break;
    case ReportFormat::kSvg:
      if (!output.svg) {
        throw Error(ErrorCode::kInvalidArgument,
                    "svg output is not available for " + std::string(CommandName(config.command)));
      }
      text = output.svg();
      break;
  }
  if (config.out) {
    WriteFileText(*config.out, text);
  } else {
    out << text;
  }
}

const std::filesystem::path& SingleRoot(const RunConfig& config) {
  if (config.gt.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, std::string(CommandName(config.command)) +
                                                 " takes exactly one --gt root");
  }
  return config.gt.front();
}

Output RunEvaluate(const RunConfig& config) {
  if (!config.pred) throw Error(ErrorCode::kInvalidArgument, "evaluate needs --pred");
  const auto index = LoadDatasetIndex(SingleRoot(config), config.split);
  auto report = std::make_shared<BenchmarkReport>(
      EvaluateDataset(*config.pred, index, config.policy, ThreadCap()));
  std::vector<std::string> warnings;
  for (const auto& v : report->missing_prediction_videos) {
    warnings.push_back("no predictions for video '" + v + "'; scored as empty");
  }
  Output o;
  o.json = Envelope("evaluate", ConfigJson(config), EvaluationJson(*report), warnings);
  o.csv = [report] { return EvaluationCsv(*report); };
  o.svg = [report] { return EvaluationSvg(*report); };
  return o;
}

Output RunAttributes(const RunConfig& config) {
  const auto index = LoadDatasetIndex(SingleRoot(config), config.split);
  const AttributeSidecar sidecar =
      config.sidecar ? LoadAttributeSidecar(*config.sidecar) : AttributeSidecar{};
  auto profiles = std::make_shared<ProfileSet>(ComputeProfiles(index, sidecar, ThreadCap()));
  auto cooccurrence = std::make_shared<CooccurrenceMatrix>(Cooccurrence(profiles->profiles));
  std::optional<AttributeBreakdownTable> breakdown;
  if (config.pred) {
    const auto report = EvaluateDataset(*config.pred, index, config.policy, ThreadCap());
    breakdown = AttributeBreakdown(report, *profiles);
  }
  Output o;
  o.json = Envelope("attributes", ConfigJson(config),
                    AttributesJson(*profiles, *cooccurrence,
                                   CountCategoricals(profiles->profiles), breakdown),
                    profiles->warnings);
  o.csv = [profiles] { return AttributesCsv(*profiles); };
  o.svg = [cooccurrence] { return CooccurrenceSvg(*cooccurrence); };
  return o;
}

Output RunStats(const RunConfig& config) {
  if (config.gt.empty()) throw Error(ErrorCode::kInvalidArgument, "stats needs --gt");
  std::vector<DatasetIndex> indexes;
  for (const auto& root : config.gt) indexes.push_back(LoadDatasetIndex(root, config.split));
  const unsigned threads = ThreadCap();
  std::vector<VideoScan> scan;
  for (const auto& index : indexes) {
    for (auto& v : ScanDataset(index, threads)) scan.push_back(std::move(v));
  }
  auto stats = std::make_shared<StatsBundle>();
  stats->summary = SummarizeDataset(scan);
  stats->length = VideoLengthHistogram(scan, config.length_bin);
  stats->mask_size = MaskSizeDistribution(scan, config.mask_bin);
  stats->top_k = config.top_k;
  if (!config.skip_intensity) {
    stats->intensity = ChannelIntensityDistribution(indexes, threads, config.intensity_bin);
  }
  if (config.taxonomy) {
    stats->categories = CategoryDistributionOf(indexes, LoadTaxonomy(*config.taxonomy));
  }
  std::vector<std::string> warnings;
  if (stats->mask_size.absent_instances > 0) {
    warnings.push_back(std::to_string(stats->mask_size.absent_instances) +
                       " instance(s) never present; left out of the mask-size distribution");
  }
  Output o;
  o.json = Envelope("stats", ConfigJson(config), StatsJson(*stats), warnings);
  o.csv = [stats] { return StatsCsv(*stats); };
  o.svg = [stats] { return StatsSvg(*stats); };
  return o;
}

Output RunParams(const RunConfig& config) {
  const AccountingOptions options{config.with_da, config.with_scg, config.bias_mode,
                                  config.scg_bias_mode};
  const auto requested =
      CountTrainableParams(config.stage4_only ? Stage4OnlyPlan() : DefaultPlan(), options);
  auto rows = std::make_shared<std::vector<ReconciliationRow>>(
      ReconcileReferenceFigures(config.bias_mode, config.scg_bias_mode));
  Output o;
  o.json = Envelope("params", ConfigJson(config),
                    ParamsJson(*rows, requested, TrainableFraction(requested.total)));
  o.csv = [rows] { return ParamsCsv(*rows); };
  return o;
}

Output RunGradcheck(const RunConfig& config) {
  auto results = std::make_shared<std::vector<GradcheckOpResult>>(
      RunGradcheckSuite(config.gradcheck));
  Output o;
  o.json = Envelope("gradcheck", ConfigJson(config),
                    GradcheckJson(*results, config.gradcheck_threshold));
  o.csv = [results] { return GradcheckCsv(*results); };
  for (const auto& r : *results) {
    if (!(r.max_error < config.gradcheck_threshold)) o.exit_code = kExitViolations;
  }
  return o;
}

Output RunSampleSubset(const RunConfig& config) {
  const auto index = LoadDatasetIndex(SingleRoot(config), config.split);
  std::optional<Taxonomy> taxonomy;
  if (config.taxonomy) taxonomy = LoadTaxonomy(*config.taxonomy);
  auto result = std::make_shared<SubsetResult>(
      SampleSubset(index, config.subset, taxonomy ? &*taxonomy : nullptr));
  if (config.manifest) WriteFileText(*config.manifest, ManifestText(*result));
  Output o;
  o.json = Envelope("sample-subset", ConfigJson(config), SubsetJson(*result));
  o.csv = [result] { return SubsetCsv(*result); };
  return o;
}

Output RunValidate(const RunConfig& config) {
  const auto index = LoadDatasetIndex(SingleRoot(config), config.split);
  std::vector<std::string> ids = config.videos;
  if (ids.empty()) {
    for (const auto& [id, v] : index.videos) ids.push_back(id);
  }
  auto reports = std::make_shared<std::vector<ValidationReport>>(ids.size());
  ParallelFor(ids.size(), ThreadCap(),
              [&](std::size_t i) { (*reports)[i] = ValidateSequence(index, ids[i]); });
  Output o;
  o.json = Envelope("validate", ConfigJson(config), ValidationJson(*reports));
  o.csv = [reports] { return ValidationCsv(*reports); };
  for (const auto& r : *reports) {
    if (!r.clean()) o.exit_code = kExitViolations;
  }
  return o;
}

void WriteError(std::ostream& err, std::string_view code, std::string_view message) {
  Json j;
  j["error"] = {{"code", code}, {"message", message}};
  err << j.dump() << "\n";
}

}  // namespace

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Output output;
    switch (config.command) {
      case Command::kEvaluate: output = RunEvaluate(config); break;
      case Command::kAttributes: output = RunAttributes(config); break;
      case Command::kStats: output = RunStats(config); break;
      case Command::kParams: output = RunParams(config); break;
      case Command::kGradcheck: output = RunGradcheck(config); break;
      case Command::kSampleSubset: output = RunSampleSubset(config); break;
      case Command::kValidate: output = RunValidate(config); break;
    }
    Emit(config, output, out);
    return output.exit_code;
  } catch (const Error& e) {
    WriteError(err, ErrorCodeName(e.code()), e.what());
  } catch (const std::exception& e) {
    WriteError(err, "InternalError", e.what());
  }
  return kExitError;
}

namespace {

struct ParseState {
  std::vector<std::string> gt;
  std::string pred, sidecar, taxonomy, out, manifest;
  std::string split;
  std::string format = "json";
  std::string bias_mode = "full";
  std::string scg_bias_mode = "full";
  bool exclude_first = true;
  bool exclude_last = true;
  bool from_frame_zero = false;
  std::optional<double> boundary_tol;
  bool no_da = false;
  bool no_scg = false;
};

std::optional<std::filesystem::path> OptPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark toolkit for underwater video object segmentation", "uwvos"};
  app.set_config("--config", "", "TOML or INI file supplying flag defaults");
  app.set_version_flag("--version", UWVOS_VERSION);
  app.require_subcommand(1, 1);

  RunConfig config;
  ParseState s;
  const std::vector<std::string> kSplits = {"train", "val", "valid", "test", "custom"};

  auto add_gt = [&](CLI::App* sub, bool many) {
    auto* opt = sub->add_option("--gt", s.gt, "Split root with meta.json and Annotations/")
                    ->required()
                    ->check(CLI::ExistingDirectory);
    if (!many) opt->expected(1);
    sub->add_option("--split", s.split, "Split the root holds")->check(CLI::IsMember(kSplits));
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", s.format, "Report format")->check(CLI::IsMember(formats));
    sub->add_option("--out", s.out, "Write the report here instead of stdout");
  };
  auto add_policy = [&](CLI::App* sub) {
    sub->add_flag("--exclude-first,!--no-exclude-first", s.exclude_first,
                  "Skip the first frame of each object's window");
    sub->add_flag("--exclude-last,!--no-exclude-last", s.exclude_last,
                  "Skip the last frame of each video");
    sub->add_flag("--from-frame-zero", s.from_frame_zero,
                  "Start windows at frame 0 rather than the first appearance");
    sub->add_option("--boundary-tol", s.boundary_tol, "Boundary tolerance in pixels")
        ->check(CLI::NonNegativeNumber);
  };

  auto* evaluate = app.add_subcommand("evaluate", "Score predicted masks against ground truth");
  add_gt(evaluate, false);
  evaluate->add_option("--pred", s.pred, "Prediction root, <video>/<frame>.png")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_policy(evaluate);
  add_format(evaluate, {"json", "csv", "svg"});

  auto* attributes = app.add_subcommand("attributes", "Per-instance attribute profiles");
  add_gt(attributes, false);
  attributes->add_option("--sidecar", s.sidecar, "JSON with manually judged attributes")
      ->check(CLI::ExistingFile);
  attributes->add_option("--pred", s.pred, "Prediction root; adds the per-attribute breakdown")
      ->check(CLI::ExistingDirectory);
  add_policy(attributes);
  add_format(attributes, {"json", "csv", "svg"});

  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  add_gt(stats, true);
  stats->add_option("--taxonomy", s.taxonomy, "Class to superclass mapping (JSON)")
      ->check(CLI::ExistingFile);
  stats->add_option("--top-k", config.top_k, "Classes listed per superclass");
  stats->add_flag("--skip-intensity", config.skip_intensity, "Do not read JPEGImages/");
  stats->add_option("--length-bin", config.length_bin, "Video length bin width (frames)")
      ->check(CLI::PositiveNumber);
  stats->add_option("--mask-bin", config.mask_bin, "Mask ratio bin width")
      ->check(CLI::PositiveNumber);
  stats->add_option("--intensity-bin", config.intensity_bin, "Channel intensity bin width")
      ->check(CLI::PositiveNumber);
  add_format(stats, {"json", "csv", "svg"});

  const std::vector<std::string> kBiasModes = {"full", "out-only", "none"};
  auto* params = app.add_subcommand("params", "Trainable parameter accounting");
  params->add_option("--bias-mode", s.bias_mode, "Domain adapter biases")
      ->check(CLI::IsMember(kBiasModes));
  params->add_option("--scg-bias-mode", s.scg_bias_mode, "Channel gate biases")
      ->check(CLI::IsMember(kBiasModes));
  params->add_flag("--stage4-only", config.stage4_only, "Freeze Stage 3 as well");
  params->add_flag("--no-da", s.no_da, "Count without domain adapters");
  params->add_flag("--no-scg", s.no_scg, "Count without channel gates");
  add_format(params, {"json", "csv"});

  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference checks of the kernel");
  gradcheck->add_option("--dim", config.gradcheck.dim, "Channel dim (multiple of 16)");
  gradcheck->add_option("--positions", config.gradcheck.positions, "Spatial positions")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--points", config.gradcheck.points, "Random points per op");
  gradcheck->add_option("--seed", config.gradcheck.seed, "RNG seed");
  gradcheck->add_option("--step", config.gradcheck.step, "Central difference step")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--threshold", config.gradcheck_threshold, "Pass threshold")
      ->check(CLI::PositiveNumber);
  add_format(gradcheck, {"json", "csv"});

  auto* sample = app.add_subcommand("sample-subset", "Seeded training subset");
  add_gt(sample, false);
  sample->add_option("--fraction", config.subset.fraction, "Share of videos in (0, 1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  sample->add_option("--seed", config.subset.seed, "RNG seed");
  sample->add_flag("--stratify", config.subset.stratify_by_superclass,
                   "Allot quotas per superclass");
  sample->add_option("--taxonomy", s.taxonomy, "Class to superclass mapping (JSON)")
      ->check(CLI::ExistingFile);
  sample->add_option("--manifest", s.manifest, "Write the manifest here");
  add_format(sample, {"json", "csv"});

  auto* validate = app.add_subcommand("validate", "Check annotation files against meta.json");
  add_gt(validate, false);
  validate->add_option("--video", config.videos, "Only these videos");
  add_format(validate, {"json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const std::pair<const char*, Command> kCommands[] = {
      {"evaluate", Command::kEvaluate},   {"attributes", Command::kAttributes},
      {"stats", Command::kStats},         {"params", Command::kParams},
      {"gradcheck", Command::kGradcheck}, {"sample-subset", Command::kSampleSubset},
      {"validate", Command::kValidate},
  };
  for (const auto& [n, c] : kCommands) {
    if (name == n) config.command = c;
  }

  for (const auto& g : s.gt) config.gt.emplace_back(g);
  config.pred = OptPath(s.pred);
  config.sidecar = OptPath(s.sidecar);
  config.taxonomy = OptPath(s.taxonomy);
  config.out = OptPath(s.out);
  config.manifest = OptPath(s.manifest);
  if (s.split.empty()) s.split = config.command == Command::kSampleSubset ? "train" : "val";
  config.split = ParseSplit(s.split);
  config.format = ParseReportFormat(s.format);
  config.bias_mode = ParseBiasMode(s.bias_mode);
  config.scg_bias_mode = ParseBiasMode(s.scg_bias_mode);
  config.with_da = !s.no_da;
  config.with_scg = !s.no_scg;
  config.policy.exclude_first = s.exclude_first;
  config.policy.exclude_last = s.exclude_last;
  config.policy.from_first_appearance = !s.from_frame_zero;
  config.policy.boundary_tolerance_px = s.boundary_tol;
  return Run(config, out, err);
}

}  // namespace uwvos
