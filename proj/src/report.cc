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

#include "uwvos/report.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "uwvos/error.h"

namespace uwvos {

std::string_view ReportFormatName(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return "json";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kSvg: return "svg";
  }
  return "json";
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "svg") return ReportFormat::kSvg;
  throw Error(ErrorCode::kInvalidArgument, "unknown report format '" + std::string(name) + "'");
}

Json Envelope(std::string_view command, Json config, Json result,
              std::span<const std::string> warnings) {
  Json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["toolkit_version"] = UWVOS_VERSION;
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["result"] = std::move(result);
  doc["warnings"] = Json::array();
  for (const auto& w : warnings) doc["warnings"].push_back(w);
  return doc;
}

std::string DumpJson(const Json& json) { return json.dump(2) + "\n"; }

Json OptionalJson(const std::optional<double>& value) {
  return value ? Json(*value) : Json(nullptr);
}

std::string CsvNumber(double value) { return fmt::format("{}", value); }

std::string CsvNumber(const std::optional<double>& value) {
  return value ? CsvNumber(*value) : std::string("NA");
}

std::string CsvField(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string SvgEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kPanelWidth = 640.0;
constexpr double kPanelHeight = 240.0;
constexpr double kMargin = 40.0;

// One bar chart panel translated to (0, top).
std::string BarPanel(std::string_view title, std::span<const std::string> labels,
                     std::span<const double> values, double top, std::string_view color) {
  std::string svg = fmt::format("<g transform=\"translate(0,{:.2f})\">\n", top);
  svg += fmt::format("<text x=\"{:.2f}\" y=\"20\" font-size=\"14\">{}</text>\n", kMargin,
                     SvgEscape(title));
  const double plot_w = kPanelWidth - 2 * kMargin;
  const double plot_h = kPanelHeight - 2 * kMargin;
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, v);
  svg += fmt::format(
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
      kMargin, kMargin + plot_h, kMargin + plot_w);
  if (!values.empty()) {
    const double bar_w = plot_w / static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double h = peak > 0.0 ? plot_h * values[i] / peak : 0.0;
      const double x = kMargin + bar_w * static_cast<double>(i);
      svg += fmt::format(
          "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\">"
          "<title>{}: {}</title></rect>\n",
          x, kMargin + plot_h - h, std::max(bar_w - 1.0, 0.5), h, color, SvgEscape(labels[i]),
          values[i]);
    }
    const std::size_t step = std::max<std::size_t>(1, values.size() / 10);
    for (std::size_t i = 0; i < values.size(); i += step) {
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"9\">{}</text>\n",
                         kMargin + bar_w * static_cast<double>(i), kMargin + plot_h + 14,
                         SvgEscape(labels[i]));
    }
  }
  svg += fmt::format("<text x=\"4\" y=\"{:.2f}\" font-size=\"9\">{}</text>\n", kMargin + 4,
                     peak);
  return svg + "</g>\n";
}

std::string SvgDocument(const std::string& body, double height) {
  return fmt::format(
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
             "font-family=\"sans-serif\">\n",
             kPanelWidth, height) +
         body + "</svg>\n";
}

std::vector<std::string> BinLabels(const Histogram& h) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < h.bins(); ++i) labels.push_back(fmt::format("{}", h.edges[i]));
  return labels;
}

}  // namespace

Json PolicyJson(const EvalPolicy& policy) {
  Json j;
  j["exclude_first"] = policy.exclude_first;
  j["exclude_last"] = policy.exclude_last;
  j["from_first_appearance"] = policy.from_first_appearance;
  j["boundary_tolerance_px"] = OptionalJson(policy.boundary_tolerance_px);
  return j;
}

Json TrackingJson(const TrackingMetrics& m, bool with_curves) {
  Json j;
  j["precision"] = m.precision;
  j["norm_precision"] = m.norm_precision;
  j["auc"] = m.auc;
  j["frames_evaluated"] = m.frames_evaluated;
  if (with_curves) {
    j["precision_curve"] = m.precision_curve;
    j["norm_precision_curve"] = m.norm_precision_curve;
    j["success_curve"] = m.success_curve;
  }
  return j;
}

Json EvaluationJson(const BenchmarkReport& report) {
  Json j;
  j["policy"] = PolicyJson(report.policy);
  Json dataset;
  dataset["J"] = OptionalJson(report.j);
  dataset["F"] = OptionalJson(report.f);
  dataset["F_dot"] = OptionalJson(report.f_dot);
  dataset["J&F"] = OptionalJson(report.j_and_f);
  dataset["J&F_dot"] = OptionalJson(report.j_and_f_dot);
  dataset["P"] = OptionalJson(report.tracking_precision);
  dataset["P_norm"] = OptionalJson(report.tracking_norm_precision);
  dataset["AUC"] = OptionalJson(report.tracking_auc);
  dataset["objects"] = report.objects.size();
  dataset["videos"] = report.videos.size();
  j["dataset"] = dataset;
  j["missing_prediction_videos"] = report.missing_prediction_videos;

  j["videos"] = Json::array();
  for (const auto& v : report.videos) {
    Json row;
    row["video"] = v.video_id;
    row["J"] = OptionalJson(v.j);
    row["F"] = OptionalJson(v.f);
    row["F_dot"] = OptionalJson(v.f_dot);
    row["missing_prediction"] = v.missing_prediction;
    row["missing_prediction_frames"] = v.missing_prediction_frames;
    j["videos"].push_back(row);
  }
  j["objects"] = Json::array();
  for (const auto& o : report.objects) {
    Json row;
    row["video"] = o.video_id;
    row["object"] = o.object_id;
    row["J"] = OptionalJson(o.j);
    row["F"] = OptionalJson(o.f);
    row["F_dot"] = OptionalJson(o.f_dot);
    row["J&F"] = OptionalJson(o.j_and_f());
    row["J&F_dot"] = OptionalJson(o.j_and_f_dot());
    row["frames_scored"] = o.frames.size();
    row["tracking"] = TrackingJson(o.tracking, false);
    row["frames"] = Json::array();
    for (const auto& f : o.frames) {
      row["frames"].push_back({{"frame", f.frame_name},
                               {"J", OptionalJson(f.j)},
                               {"F", OptionalJson(f.f)},
                               {"F_dot", f.f_dot}});
    }
    j["objects"].push_back(row);
  }
  return j;
}

std::string EvaluationCsv(const BenchmarkReport& report) {
  std::string csv = "level,video,object,J,F,F_dot,J&F,J&F_dot,P,P_norm,AUC\n";
  csv += fmt::format("dataset,,,{},{},{},{},{},{},{},{}\n", CsvNumber(report.j),
                     CsvNumber(report.f), CsvNumber(report.f_dot), CsvNumber(report.j_and_f),
                     CsvNumber(report.j_and_f_dot), CsvNumber(report.tracking_precision),
                     CsvNumber(report.tracking_norm_precision), CsvNumber(report.tracking_auc));
  for (const auto& v : report.videos) {
    csv += fmt::format("video,{},,{},{},{},{},{},NA,NA,NA\n", CsvField(v.video_id),
                       CsvNumber(v.j), CsvNumber(v.f), CsvNumber(v.f_dot),
                       CsvNumber(MeanPair(v.j, v.f)), CsvNumber(MeanPair(v.j, v.f_dot)));
  }
  for (const auto& o : report.objects) {
    const bool tracked = o.tracking.frames_evaluated > 0;
    auto track = [&](double v) { return tracked ? CsvNumber(v) : std::string("NA"); };
    csv += fmt::format("object,{},{},{},{},{},{},{},{},{},{}\n", CsvField(o.video_id),
                       o.object_id, CsvNumber(o.j), CsvNumber(o.f), CsvNumber(o.f_dot),
                       CsvNumber(o.j_and_f()), CsvNumber(o.j_and_f_dot()),
                       track(o.tracking.precision), track(o.tracking.norm_precision),
                       track(o.tracking.auc));
  }
  return csv;
}

std::string EvaluationSvg(const BenchmarkReport& report) {
  std::vector<std::string> labels;
  std::vector<double> values;
  for (const auto& v : report.videos) {
    labels.push_back(v.video_id);
    values.push_back(MeanPair(v.j, v.f_dot).value_or(0.0));
  }
  return SvgDocument(BarPanel("J&F_dot per video", labels, values, 0.0, "#2b6f9e"),
                     kPanelHeight);
}

Json ProfileJson(const AttributeProfile& profile) {
  Json j;
  for (int i = 0; i < kBinaryAttributeCount; ++i) {
    const auto& flag = profile.flags[i];
    j[std::string(FieldName(i))] = flag ? Json(*flag) : Json(nullptr);
  }
  auto categorical = [](const std::optional<int>& v, auto values) {
    return v ? Json(std::string(values[*v])) : Json(nullptr);
  };
  j["UV"] = categorical(profile.visibility, kVisibilityValues);
  j["US"] = categorical(profile.scene, kSceneValues);
  j["WC"] = categorical(profile.water_color, kWaterColorValues);
  Json provenance;
  for (int i = 0; i < kFieldCount; ++i) {
    provenance[std::string(FieldName(i))] = ProvenanceName(profile.provenance[i]);
  }
  j["provenance"] = provenance;
  return j;
}

Json CooccurrenceJson(const CooccurrenceMatrix& m) {
  Json j;
  j["attributes"] = Json::array();
  for (int i = 0; i < kBinaryAttributeCount; ++i) j["attributes"].push_back(FieldName(i));
  j["counts"] = Json::array();
  for (const auto& row : m.counts) j["counts"].push_back(row);
  return j;
}

Json CategoricalJson(const CategoricalCounts& c) {
  auto block = [](const auto& names, const auto& counts) {
    Json j;
    for (std::size_t i = 0; i < names.size(); ++i) j[std::string(names[i])] = counts[i];
    return j;
  };
  Json j;
  j["UV"] = block(kVisibilityValues, c.visibility);
  j["US"] = block(kSceneValues, c.scene);
  j["WC"] = block(kWaterColorValues, c.water_color);
  return j;
}

Json BreakdownJson(const AttributeBreakdownTable& table) {
  Json j;
  j["overall_J&F_dot"] = OptionalJson(table.overall);
  j["rows"] = Json::array();
  for (const auto& row : table.rows) {
    Json r;
    r["attribute"] = AttributeName(row.attribute);
    r["instances"] = row.instances;
    r["J&F_dot"] = OptionalJson(row.j_and_f_dot);
    j["rows"].push_back(r);
  }
  return j;
}

Json AttributesJson(const ProfileSet& profiles, const CooccurrenceMatrix& cooccurrence,
                    const CategoricalCounts& categoricals,
                    const std::optional<AttributeBreakdownTable>& breakdown) {
  Json j;
  j["instances"] = Json::array();
  for (const auto& inst : profiles.profiles) {
    Json row;
    row["video"] = inst.video_id;
    row["object"] = inst.object_id;
    row["category"] = inst.category;
    row["attributes"] = ProfileJson(inst.profile);
    j["instances"].push_back(row);
  }
  Json counts;
  for (int i = 0; i < kBinaryAttributeCount; ++i) {
    counts[std::string(FieldName(i))] = cooccurrence.counts[i][i];
  }
  j["attribute_counts"] = counts;
  j["cooccurrence"] = CooccurrenceJson(cooccurrence);
  j["categorical_counts"] = CategoricalJson(categoricals);
  if (breakdown) j["breakdown"] = BreakdownJson(*breakdown);
  return j;
}

std::string AttributesCsv(const ProfileSet& profiles) {
  std::string csv = "video,object,category";
  for (int i = 0; i < kFieldCount; ++i) csv += fmt::format(",{}", FieldName(i));
  csv += "\n";
  for (const auto& inst : profiles.profiles) {
    const auto& p = inst.profile;
    csv += fmt::format("{},{},{}", CsvField(inst.video_id), inst.object_id,
                       CsvField(inst.category));
    for (int i = 0; i < kBinaryAttributeCount; ++i) {
      csv += p.flags[i] ? (*p.flags[i] ? ",1" : ",0") : ",NA";
    }
    auto categorical = [](const std::optional<int>& v, auto values) {
      return v ? CsvField(values[*v]) : std::string("NA");
    };
    csv += "," + categorical(p.visibility, kVisibilityValues);
    csv += "," + categorical(p.scene, kSceneValues);
    csv += "," + categorical(p.water_color, kWaterColorValues) + "\n";
  }
  return csv;
}

std::string CooccurrenceSvg(const CooccurrenceMatrix& m) {
  constexpr double kCell = 36.0;
  constexpr double kOffset = 60.0;
  std::int64_t peak = 0;
  for (const auto& row : m.counts) {
    for (auto v : row) peak = std::max(peak, v);
  }
  std::string body;
  for (int a = 0; a < kBinaryAttributeCount; ++a) {
    body += fmt::format("<text x=\"4\" y=\"{:.2f}\" font-size=\"11\">{}</text>\n",
                        kOffset + kCell * a + kCell * 0.6, FieldName(a));
    body += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\">{}</text>\n",
                        kOffset + kCell * a + 4, kOffset - 8, FieldName(a));
    for (int b = 0; b < kBinaryAttributeCount; ++b) {
      const auto v = m.counts[a][b];
      const int shade = peak > 0 ? static_cast<int>(255 - (200 * v) / peak) : 255;
      body += fmt::format(
          "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
          "fill=\"rgb({},{},255)\"/><text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\">{}</text>\n",
          kOffset + kCell * b, kOffset + kCell * a, kCell, kCell, shade, shade,
          kOffset + kCell * b + 6, kOffset + kCell * a + kCell * 0.6, v);
    }
  }
  const double size = kOffset + kCell * kBinaryAttributeCount + 10;
  return fmt::format(
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{0:.0f}\" "
             "font-family=\"sans-serif\">\n",
             size) +
         body + "</svg>\n";
}

Json HistogramJson(const Histogram& h) {
  Json j;
  j["edges"] = h.edges;
  j["counts"] = h.counts;
  j["normalized"] = Normalize(h).counts;
  return j;
}

Json StatsJson(const StatsBundle& stats) {
  Json j;
  Json summary;
  summary["videos"] = stats.summary.videos;
  summary["frames"] = stats.summary.frames;
  summary["instances"] = stats.summary.instances;
  summary["annotations"] = stats.summary.annotations;
  j["summary"] = summary;

  Json length;
  length["mean"] = stats.length.mean;
  length["max"] = stats.length.max;
  length["histogram"] = HistogramJson(stats.length.histogram);
  j["video_length"] = length;

  Json mask;
  mask["small_fraction"] = stats.mask_size.small_fraction;
  mask["instances_with_ratio"] = stats.mask_size.ratios.size();
  mask["absent_instances"] = stats.mask_size.absent_instances;
  mask["histogram"] = HistogramJson(stats.mask_size.histogram);
  j["mask_size"] = mask;

  if (stats.intensity) {
    static constexpr const char* kChannels[] = {"R", "G", "B"};
    Json intensity;
    for (int c = 0; c < 3; ++c) {
      Json ch;
      ch["mode"] = stats.intensity->modes[c];
      ch["histogram"] = HistogramJson(stats.intensity->histograms[c]);
      intensity[kChannels[c]] = ch;
    }
    Json per_video = Json::array();
    for (std::size_t i = 0; i < stats.intensity->video_ids.size(); ++i) {
      const auto& m = stats.intensity->means[i];
      per_video.push_back({{"video", stats.intensity->video_ids[i]},
                           {"R", m[0]},
                           {"G", m[1]},
                           {"B", m[2]}});
    }
    intensity["videos"] = per_video;
    j["channel_intensity"] = intensity;
  }

  if (stats.categories) {
    Json cats;
    cats["classes"] = stats.categories->class_count();
    cats["instances"] = stats.categories->total();
    Json supers;
    for (const auto& [super, classes] : stats.categories->counts) {
      Json s;
      std::int64_t total = 0;
      for (const auto& [cls, n] : classes) total += n;
      s["instances"] = total;
      s["classes"] = classes;
      Json top = Json::array();
      for (const auto& [cls, n] : stats.categories->top(super, stats.top_k)) {
        top.push_back({{"class", cls}, {"instances", n}});
      }
      s["top"] = top;
      supers[super] = s;
    }
    cats["superclasses"] = supers;
    j["categories"] = cats;
  }
  return j;
}

std::string StatsCsv(const StatsBundle& stats) {
  std::string csv = "histogram,bin_lo,bin_hi,count,share\n";
  auto emit = [&csv](std::string_view name, const Histogram& h) {
    const Histogram n = Normalize(h);
    for (std::size_t i = 0; i < h.bins(); ++i) {
      csv += fmt::format("{},{},{},{},{}\n", name, CsvNumber(h.edges[i]),
                         CsvNumber(h.edges[i + 1]), CsvNumber(h.counts[i]),
                         CsvNumber(n.counts[i]));
    }
  };
  emit("video_length", stats.length.histogram);
  emit("mask_size", stats.mask_size.histogram);
  if (stats.intensity) {
    emit("intensity_R", stats.intensity->histograms[0]);
    emit("intensity_G", stats.intensity->histograms[1]);
    emit("intensity_B", stats.intensity->histograms[2]);
  }
  return csv;
}

std::string StatsSvg(const StatsBundle& stats) {
  std::string body;
  double top = 0.0;
  auto panel = [&](std::string_view title, const Histogram& h, std::string_view color) {
    const auto labels = BinLabels(h);
    body += BarPanel(title, labels, h.counts, top, color);
    top += kPanelHeight;
  };
  panel("Video length (frames)", stats.length.histogram, "#4c72b0");
  panel("Mean mask ratio per instance", stats.mask_size.histogram, "#55a868");
  if (stats.intensity) {
    panel("First-frame mean R", stats.intensity->histograms[0], "#c44e52");
    panel("First-frame mean G", stats.intensity->histograms[1], "#55a868");
    panel("First-frame mean B", stats.intensity->histograms[2], "#4c72b0");
  }
  if (stats.categories) {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (const auto& [super, classes] : stats.categories->counts) {
      double total = 0.0;
      for (const auto& [cls, n] : classes) total += static_cast<double>(n);
      labels.push_back(super);
      values.push_back(total);
    }
    body += BarPanel("Instances per superclass", labels, values, top, "#8172b2");
    top += kPanelHeight;
  }
  return SvgDocument(body, top);
}

Json ParamCountJson(const ParamCount& count) {
  Json j;
  j["total"] = count.total;
  j["stages"] = Json::array();
  for (const auto& s : count.stages) {
    j["stages"].push_back({{"stage", s.stage},
                           {"dim", s.dim},
                           {"bottleneck", s.bottleneck},
                           {"insertions", s.insertions},
                           {"da_params", s.da_params},
                           {"scg_params", s.scg_params},
                           {"total", s.total}});
  }
  return j;
}

Json ParamsJson(std::span<const ReconciliationRow> rows, const ParamCount& requested,
                double trainable_fraction) {
  Json j;
  j["requested"] = ParamCountJson(requested);
  j["backbone_params"] = kBackboneParams;
  j["trainable_fraction"] = trainable_fraction;
  j["tolerance"] = kReconciliationTolerance;
  j["reconciliation"] = Json::array();
  for (const auto& r : rows) {
    j["reconciliation"].push_back({{"configuration", r.name},
                                   {"with_da", r.options.with_da},
                                   {"with_scg", r.options.with_scg},
                                   {"stage4_only", r.stage4_only},
                                   {"derived", r.derived},
                                   {"reference", r.printed},
                                   {"reference_value", r.reference},
                                   {"raw_deviation", r.raw_deviation},
                                   {"rounded_deviation", r.rounded_deviation},
                                   {"within_tolerance", r.within_tolerance}});
  }
  return j;
}

std::string ParamsCsv(std::span<const ReconciliationRow> rows) {
  std::string csv =
      "configuration,with_da,with_scg,stage4_only,derived,reference,raw_deviation,"
      "rounded_deviation,within_tolerance\n";
  for (const auto& r : rows) {
    csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", CsvField(r.name), r.options.with_da,
                       r.options.with_scg, r.stage4_only, r.derived, CsvField(r.printed),
                       CsvNumber(r.raw_deviation), CsvNumber(r.rounded_deviation),
                       r.within_tolerance);
  }
  return csv;
}

Json GradcheckJson(std::span<const GradcheckOpResult> results, double threshold) {
  Json j;
  j["threshold"] = threshold;
  j["ops"] = Json::array();
  for (const auto& r : results) {
    j["ops"].push_back({{"op", r.op},
                        {"points", r.errors.size()},
                        {"max_relative_error", r.max_error},
                        {"pass", r.max_error < threshold},
                        {"errors", r.errors}});
  }
  return j;
}

std::string GradcheckCsv(std::span<const GradcheckOpResult> results) {
  std::string csv = "op,point,relative_error\n";
  for (const auto& r : results) {
    for (std::size_t k = 0; k < r.errors.size(); ++k) {
      csv += fmt::format("{},{},{}\n", r.op, k, CsvNumber(r.errors[k]));
    }
  }
  return csv;
}

Json SubsetJson(const SubsetResult& result) {
  Json j;
  j["fraction"] = result.spec.fraction;
  j["seed"] = result.spec.seed;
  j["stratify"] = result.spec.stratify_by_superclass;
  j["source_videos"] = result.source_videos;
  j["count"] = result.video_ids.size();
  j["videos"] = result.video_ids;
  return j;
}

std::string SubsetCsv(const SubsetResult& result) {
  std::string csv = "video\n";
  for (const auto& id : result.video_ids) csv += CsvField(id) + "\n";
  return csv;
}

Json ValidationJson(std::span<const ValidationReport> reports) {
  Json j;
  std::size_t total = 0;
  j["videos"] = Json::array();
  for (const auto& r : reports) {
    Json v;
    v["video"] = r.video_id;
    v["clean"] = r.clean();
    v["violations"] = Json::array();
    for (const auto& violation : r.violations) {
      v["violations"].push_back({{"kind", ViolationKindName(violation.kind)},
                                 {"frame", violation.frame_name},
                                 {"object", violation.object_id},
                                 {"detail", violation.detail}});
    }
    total += r.violations.size();
    j["videos"].push_back(v);
  }
  j["violations"] = total;
  j["clean"] = total == 0;
  return j;
}

std::string ValidationCsv(std::span<const ValidationReport> reports) {
  std::string csv = "video,kind,frame,object,detail\n";
  for (const auto& r : reports) {
    for (const auto& v : r.violations) {
      csv += fmt::format("{},{},{},{},{}\n", CsvField(r.video_id), ViolationKindName(v.kind),
                         CsvField(v.frame_name), v.object_id, CsvField(v.detail));
    }
  }
  return csv;
}

}  // namespace uwvos
