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

#ifndef UWVOS_REPORT_H_
#define UWVOS_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uwvos/attributes.h"
#include "uwvos/dataset.h"
#include "uwvos/evaluation.h"
#include "uwvos/param_accounting.h"
#include "uwvos/sampler.h"
#include "uwvos/stats.h"
#include "uwvos/uda_kernel.h"

namespace uwvos {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { kJson, kCsv, kSvg };
std::string_view ReportFormatName(ReportFormat format);
// Throws Error{kInvalidArgument}.
ReportFormat ParseReportFormat(std::string_view name);

// {"schema_version", "toolkit_version", "command", "config", "result", "warnings"}.
Json Envelope(std::string_view command, Json config, Json result,
              std::span<const std::string> warnings = {});
// Two-space indent and a trailing newline.
std::string DumpJson(const Json& json);

// Undefined values become JSON null and CSV "NA".
Json OptionalJson(const std::optional<double>& value);
std::string CsvNumber(double value);
std::string CsvNumber(const std::optional<double>& value);
std::string CsvField(std::string_view text);

Json PolicyJson(const EvalPolicy& policy);
Json TrackingJson(const TrackingMetrics& m, bool with_curves);
Json EvaluationJson(const BenchmarkReport& report);
std::string EvaluationCsv(const BenchmarkReport& report);
std::string EvaluationSvg(const BenchmarkReport& report);

Json ProfileJson(const AttributeProfile& profile);
Json CooccurrenceJson(const CooccurrenceMatrix& m);
Json CategoricalJson(const CategoricalCounts& c);
Json BreakdownJson(const AttributeBreakdownTable& table);
Json AttributesJson(const ProfileSet& profiles, const CooccurrenceMatrix& cooccurrence,
                    const CategoricalCounts& categoricals,
                    const std::optional<AttributeBreakdownTable>& breakdown);
// One row per instance, one column per field.
std::string AttributesCsv(const ProfileSet& profiles);
std::string CooccurrenceSvg(const CooccurrenceMatrix& m);

struct StatsBundle {
  DatasetSummary summary;
  LengthStats length;
  MaskSizeStats mask_size;
  std::optional<ChannelIntensityStats> intensity;
  std::optional<CategoryDistribution> categories;
  std::size_t top_k = 10;
};

Json HistogramJson(const Histogram& h);
Json StatsJson(const StatsBundle& stats);
// Long form: histogram,bin_lo,bin_hi,count,share.
std::string StatsCsv(const StatsBundle& stats);
std::string StatsSvg(const StatsBundle& stats);

Json ParamCountJson(const ParamCount& count);
Json ParamsJson(std::span<const ReconciliationRow> rows, const ParamCount& requested,
                double trainable_fraction);
std::string ParamsCsv(std::span<const ReconciliationRow> rows);

Json GradcheckJson(std::span<const GradcheckOpResult> results, double threshold);
std::string GradcheckCsv(std::span<const GradcheckOpResult> results);

Json SubsetJson(const SubsetResult& result);
std::string SubsetCsv(const SubsetResult& result);

Json ValidationJson(std::span<const ValidationReport> reports);
std::string ValidationCsv(std::span<const ValidationReport> reports);

}  // namespace uwvos

#endif  // UWVOS_REPORT_H_
