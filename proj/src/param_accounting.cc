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

#include "uwvos/param_accounting.h"

#include <cmath>

#include "uwvos/error.h"
#include "uwvos/uda_kernel.h"

namespace uwvos {

std::string_view BiasModeName(BiasMode mode) {
  switch (mode) {
    case BiasMode::kFull: return "full";
    case BiasMode::kOutOnly: return "out-only";
    case BiasMode::kNone: return "none";
  }
  return "full";
}

BiasMode ParseBiasMode(std::string_view name) {
  if (name == "full") return BiasMode::kFull;
  if (name == "out-only") return BiasMode::kOutOnly;
  if (name == "none") return BiasMode::kNone;
  throw Error(ErrorCode::kInvalidArgument, "unknown bias mode '" + std::string(name) + "'");
}

AdapterPlan DefaultPlan() {
  return {{
      {.stage = 1, .dim = 112, .blocks = 2, .stride = 1, .offset = 0, .frozen = true},
      {.stage = 2, .dim = 224, .blocks = 3, .stride = 1, .offset = 0, .frozen = true},
      {.stage = 3, .dim = 448, .blocks = 16, .stride = 2, .offset = 0, .frozen = false},
      {.stage = 4, .dim = 896, .blocks = 3, .stride = 1, .offset = 0, .frozen = false},
  }};
}

AdapterPlan Stage4OnlyPlan() {
  AdapterPlan plan = DefaultPlan();
  plan.stages[2].frozen = true;
  return plan;
}

void ValidatePlan(const AdapterPlan& plan) {
  for (const auto& s : plan.stages) {
    BottleneckFor(s.dim);
    if (s.stride == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "stage " + std::to_string(s.stage) + " has insertion stride 0");
    }
  }
}

std::size_t InsertionCount(const StageSpec& stage) {
  if (stage.frozen || stage.offset >= stage.blocks) return 0;
  return (stage.blocks - stage.offset + stage.stride - 1) / stage.stride;
}

namespace {

std::int64_t ProjectionPairCost(std::size_t d, BiasMode bias) {
  const auto dd = static_cast<std::int64_t>(d);
  const auto r = static_cast<std::int64_t>(BottleneckFor(d));
  std::int64_t cost = 2 * dd * r;
  if (bias == BiasMode::kFull) cost += r + dd;
  if (bias == BiasMode::kOutOnly) cost += dd;
  return cost;
}

}  // namespace

std::int64_t AdapterPairCost(std::size_t d, BiasMode bias) {
  return 2 * ProjectionPairCost(d, bias);
}

std::int64_t ScgCost(std::size_t d, BiasMode bias) { return ProjectionPairCost(d, bias); }

ParamCount CountTrainableParams(const AdapterPlan& plan, const AccountingOptions& options) {
  ValidatePlan(plan);
  ParamCount count;
  for (const auto& s : plan.stages) {
    StageCount sc;
    sc.stage = s.stage;
    sc.dim = s.dim;
    sc.bottleneck = BottleneckFor(s.dim);
    sc.insertions = InsertionCount(s);
    const auto n = static_cast<std::int64_t>(sc.insertions);
    if (options.with_da) sc.da_params = n * AdapterPairCost(s.dim, options.da_bias);
    if (options.with_scg) sc.scg_params = n * ScgCost(s.dim, options.scg_bias);
    sc.total = sc.da_params + sc.scg_params;
    count.total += sc.total;
    count.stages.push_back(sc);
  }
  return count;
}

double TrainableFraction(std::int64_t trainable, double backbone) {
  return static_cast<double>(trainable) / backbone;
}

double RoundToSignificant(double value, int digits) {
  if (value == 0.0) return 0.0;
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const double scale = std::pow(10.0, exponent - digits + 1);
  return std::round(value / scale) * scale;
}

std::vector<ReconciliationRow> ReconcileReferenceFigures(BiasMode da_bias, BiasMode scg_bias) {
  struct Reference {
    const char* name;
    bool with_da;
    bool with_scg;
    bool stage4_only;
    const char* printed;
    double value;
    int digits;
  };
  static constexpr Reference kReferences[] = {
      {"DA + SCG", true, true, false, "1.5 M", 1.5e6, 2},
      {"DA only", true, false, false, "1.0 M", 1.0e6, 2},
      {"SCG only", false, true, false, "508 K", 508e3, 3},
      {"DA + SCG, Stage 4 only", true, true, true, "911 K", 911e3, 3},
  };

  std::vector<ReconciliationRow> rows;
  for (const auto& ref : kReferences) {
    ReconciliationRow row;
    row.name = ref.name;
    row.options = {ref.with_da, ref.with_scg, da_bias, scg_bias};
    row.stage4_only = ref.stage4_only;
    row.derived = CountTrainableParams(ref.stage4_only ? Stage4OnlyPlan() : DefaultPlan(),
                                       row.options)
                      .total;
    row.printed = ref.printed;
    row.reference = ref.value;
    row.significant_digits = ref.digits;
    const double derived = static_cast<double>(row.derived);
    row.raw_deviation = (derived - ref.value) / ref.value;
    row.rounded_deviation = (RoundToSignificant(derived, ref.digits) - ref.value) / ref.value;
    row.within_tolerance = std::abs(row.rounded_deviation) <= kReconciliationTolerance;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace uwvos
