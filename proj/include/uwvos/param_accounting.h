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

#ifndef UWVOS_PARAM_ACCOUNTING_H_
#define UWVOS_PARAM_ACCOUNTING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uwvos {

// Which biases an adapter or gate carries. kOutOnly keeps the output-side
// projection bias (DA b_out, SCG phi_up bias).
enum class BiasMode { kFull, kOutOnly, kNone };
std::string_view BiasModeName(BiasMode mode);
// "full", "out-only", "none". Throws Error{kInvalidArgument}.
BiasMode ParseBiasMode(std::string_view name);

struct StageSpec {
  int stage = 0;
  std::size_t dim = 0;
  std::size_t blocks = 0;
  // Blocks offset, offset + stride, ... get a UDA block.
  std::size_t stride = 1;
  std::size_t offset = 0;
  bool frozen = false;
};

struct AdapterPlan {
  std::vector<StageSpec> stages;
};

// Stages 1-2 frozen; Stage 3 (448-d, 16 blocks) every second block; Stage 4
// (896-d, 3 blocks) every block.
AdapterPlan DefaultPlan();
// Default plan with Stage 3 frozen as well.
AdapterPlan Stage4OnlyPlan();

// Throws Error{kIndivisibleDim, kInvalidArgument}.
void ValidatePlan(const AdapterPlan& plan);
std::size_t InsertionCount(const StageSpec& stage);

// Two adapters per block.
std::int64_t AdapterPairCost(std::size_t d, BiasMode bias);
std::int64_t ScgCost(std::size_t d, BiasMode bias);

struct AccountingOptions {
  bool with_da = true;
  bool with_scg = true;
  BiasMode da_bias = BiasMode::kFull;
  BiasMode scg_bias = BiasMode::kFull;
};

struct StageCount {
  int stage = 0;
  std::size_t dim = 0;
  std::size_t bottleneck = 0;
  std::size_t insertions = 0;
  std::int64_t da_params = 0;
  std::int64_t scg_params = 0;
  std::int64_t total = 0;
};

struct ParamCount {
  std::int64_t total = 0;
  std::vector<StageCount> stages;
};

ParamCount CountTrainableParams(const AdapterPlan& plan, const AccountingOptions& options = {});

inline constexpr double kBackboneParams = 80.8e6;
inline constexpr double kReconciliationTolerance = 0.005;

double TrainableFraction(std::int64_t trainable, double backbone = kBackboneParams);

// `value` rounded to `digits` significant decimal digits.
double RoundToSignificant(double value, int digits);

struct ReconciliationRow {
  std::string name;
  AccountingOptions options;
  bool stage4_only = false;
  std::int64_t derived = 0;
  std::string printed;  // reference figure as printed, e.g. "1.5 M"
  double reference = 0.0;
  int significant_digits = 0;
  // (derived - reference) / reference.
  double raw_deviation = 0.0;
  // Same, after rounding derived to the reference's significant digits.
  double rounded_deviation = 0.0;
  bool within_tolerance = false;
};

// The four published configurations: both modules, without SCG, without DA,
// Stage 4 only. `da_bias` and `scg_bias` apply to every row.
std::vector<ReconciliationRow> ReconcileReferenceFigures(BiasMode da_bias = BiasMode::kFull,
                                                         BiasMode scg_bias = BiasMode::kFull);

}  // namespace uwvos

#endif  // UWVOS_PARAM_ACCOUNTING_H_
