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

#ifndef UWVOS_CLI_H_
#define UWVOS_CLI_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "uwvos/dataset.h"
#include "uwvos/evaluation.h"
#include "uwvos/param_accounting.h"
#include "uwvos/report.h"
#include "uwvos/sampler.h"
#include "uwvos/stats.h"
#include "uwvos/uda_kernel.h"

namespace uwvos {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolations = 3;

enum class Command {
  kEvaluate,
  kAttributes,
  kStats,
  kParams,
  kGradcheck,
  kSampleSubset,
  kValidate,
};
std::string_view CommandName(Command command);

struct RunConfig {
  Command command = Command::kParams;
  std::vector<std::filesystem::path> gt;
  std::optional<std::filesystem::path> pred;
  std::optional<std::filesystem::path> sidecar;
  std::optional<std::filesystem::path> taxonomy;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> manifest;
  Split split = Split::kVal;
  EvalPolicy policy;
  ReportFormat format = ReportFormat::kJson;

  // params
  BiasMode bias_mode = BiasMode::kFull;
  BiasMode scg_bias_mode = BiasMode::kFull;
  bool stage4_only = false;
  bool with_da = true;
  bool with_scg = true;

  // gradcheck
  GradcheckSuiteSpec gradcheck;
  double gradcheck_threshold = 1e-6;

  // sample-subset
  SubsetSpec subset;

  // stats
  std::size_t top_k = 10;
  bool skip_intensity = false;
  double length_bin = kLengthBinWidth;
  double mask_bin = kMaskRatioBinWidth;
  double intensity_bin = kIntensityBinWidth;

  // validate
  std::vector<std::string> videos;
};

// Everything that affects report content. The thread cap is left out so
// reports do not depend on it.
Json ConfigJson(const RunConfig& config);

// Writes the report to config.out (or `out`). Module errors become
// {"error": {"code", "message"}} on `err` and exit code kExitError.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses flags, an optional --config file, then runs.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uwvos

#endif  // UWVOS_CLI_H_
