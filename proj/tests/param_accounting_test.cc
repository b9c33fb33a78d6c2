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

#include <gtest/gtest.h>
#include "uwvos/error.h"

namespace uwvos {
namespace {

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

// Shape-by-shape count of one projection pair d -> r -> d.
std::int64_t PairOfProjections(std::int64_t d, bool in_bias, bool out_bias) {
  const std::int64_t r = d / 16;
  return d * r + (in_bias ? r : 0) + r * d + (out_bias ? d : 0);
}

std::int64_t OracleCount(bool stage3, bool da, bool scg) {
  std::int64_t total = 0;
  // Stage 3: blocks 0, 2, ..., 14 of 16. Stage 4: blocks 0, 1, 2.
  const std::int64_t per3 = (da ? 2 : 0) * PairOfProjections(448, true, true) +
                            (scg ? 1 : 0) * PairOfProjections(448, true, true);
  const std::int64_t per4 = (da ? 2 : 0) * PairOfProjections(896, true, true) +
                            (scg ? 1 : 0) * PairOfProjections(896, true, true);
  if (stage3) total += 8 * per3;
  total += 3 * per4;
  return total;
}

TEST(ParamAccountingTest, DefaultPlanCounts) {
  EXPECT_EQ(CountTrainableParams(DefaultPlan()).total, 1525272);
  EXPECT_EQ(CountTrainableParams(DefaultPlan()).total, OracleCount(true, true, true));
  EXPECT_EQ(CountTrainableParams(DefaultPlan(), {.with_scg = false}).total, 1016848);
  EXPECT_EQ(CountTrainableParams(DefaultPlan(), {.with_da = false}).total, 508424);
  EXPECT_EQ(CountTrainableParams(DefaultPlan(), {.with_da = false}).total,
            OracleCount(true, false, true));
  EXPECT_EQ(CountTrainableParams(Stage4OnlyPlan()).total, 911736);
  EXPECT_EQ(CountTrainableParams(Stage4OnlyPlan()).total, OracleCount(false, true, true));
  EXPECT_EQ(CountTrainableParams(DefaultPlan(), {.with_da = false, .with_scg = false}).total, 0);
}

TEST(ParamAccountingTest, BiasModes) {
  EXPECT_EQ(CountTrainableParams(Stage4OnlyPlan(), {.da_bias = BiasMode::kOutOnly}).total,
            911400);
  EXPECT_EQ(CountTrainableParams(Stage4OnlyPlan(), {.da_bias = BiasMode::kOutOnly,
                                                    .scg_bias = BiasMode::kOutOnly})
                .total,
            911232);
  EXPECT_EQ(AdapterPairCost(896, BiasMode::kNone), 2 * PairOfProjections(896, false, false));
  EXPECT_EQ(ScgCost(448, BiasMode::kOutOnly), PairOfProjections(448, false, true));
  EXPECT_EQ(ParseBiasMode("out-only"), BiasMode::kOutOnly);
  EXPECT_EQ(BiasModeName(BiasMode::kNone), "none");
  EXPECT_EQ(CodeOf([] { ParseBiasMode("partial"); }), ErrorCode::kInvalidArgument);
}

TEST(ParamAccountingTest, PerStageBreakdown) {
  const ParamCount c = CountTrainableParams(DefaultPlan());
  ASSERT_EQ(c.stages.size(), 4u);
  EXPECT_EQ(c.stages[0].insertions, 0u);
  EXPECT_EQ(c.stages[1].total, 0);
  EXPECT_EQ(c.stages[2].insertions, 8u);
  EXPECT_EQ(c.stages[2].bottleneck, 28u);
  EXPECT_EQ(c.stages[3].insertions, 3u);
  std::int64_t sum = 0;
  for (const auto& s : c.stages) {
    EXPECT_EQ(s.total, s.da_params + s.scg_params);
    sum += s.total;
  }
  EXPECT_EQ(sum, c.total);
}

TEST(ParamAccountingTest, InsertionCounts) {
  EXPECT_EQ(InsertionCount({.stage = 3, .dim = 448, .blocks = 16, .stride = 2}), 8u);
  EXPECT_EQ(InsertionCount({.stage = 3, .dim = 448, .blocks = 15, .stride = 2}), 8u);
  EXPECT_EQ(InsertionCount({.stage = 3, .dim = 448, .blocks = 16, .stride = 2, .offset = 1}), 8u);
  EXPECT_EQ(InsertionCount({.stage = 3, .dim = 448, .blocks = 15, .stride = 2, .offset = 1}), 7u);
  EXPECT_EQ(InsertionCount({.stage = 3, .dim = 448, .blocks = 16, .stride = 3}), 6u);
  EXPECT_EQ(InsertionCount({.stage = 1, .dim = 112, .blocks = 2, .frozen = true}), 0u);
}

TEST(ParamAccountingTest, LinearInBlocksQuadraticInDim) {
  for (std::size_t blocks = 1; blocks <= 12; ++blocks) {
    AdapterPlan plan{{{.stage = 4, .dim = 256, .blocks = blocks}}};
    EXPECT_EQ(CountTrainableParams(plan).total,
              static_cast<std::int64_t>(blocks) * CountTrainableParams({{{.stage = 4, .dim = 256, .blocks = 1}}}).total);
  }
  for (std::size_t d = 16; d <= 1024; d *= 2) {
    // Doubling d (r = d/16) quadruples the weight terms and doubles the biases.
    const std::int64_t weights = AdapterPairCost(d, BiasMode::kNone);
    EXPECT_EQ(AdapterPairCost(2 * d, BiasMode::kNone), 4 * weights);
    EXPECT_EQ(AdapterPairCost(2 * d, BiasMode::kFull) - AdapterPairCost(2 * d, BiasMode::kNone),
              2 * (AdapterPairCost(d, BiasMode::kFull) - weights));
  }
}

TEST(ParamAccountingTest, ValidationErrors) {
  EXPECT_EQ(CodeOf([] { ValidatePlan({{{.stage = 3, .dim = 100, .blocks = 2}}}); }),
            ErrorCode::kIndivisibleDim);
  EXPECT_EQ(CodeOf([] { CountTrainableParams({{{.stage = 3, .dim = 100, .blocks = 2}}}); }),
            ErrorCode::kIndivisibleDim);
  EXPECT_EQ(CodeOf([] { ValidatePlan({{{.stage = 3, .dim = 32, .blocks = 2, .stride = 0}}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(ParamAccountingTest, TrainableFraction) {
  const double f = TrainableFraction(CountTrainableParams(DefaultPlan()).total);
  EXPECT_GE(f, 0.018);
  EXPECT_LE(f, 0.020);
  EXPECT_DOUBLE_EQ(f, 1525272.0 / 80.8e6);
}

TEST(ParamAccountingTest, RoundToSignificant) {
  EXPECT_DOUBLE_EQ(RoundToSignificant(1525272, 2), 1.5e6);
  EXPECT_DOUBLE_EQ(RoundToSignificant(1016848, 2), 1.0e6);
  EXPECT_DOUBLE_EQ(RoundToSignificant(508424, 3), 508000);
  EXPECT_DOUBLE_EQ(RoundToSignificant(911736, 3), 912000);
  EXPECT_DOUBLE_EQ(RoundToSignificant(0.0123456, 3), 0.0123);
}

TEST(ParamAccountingTest, ReconciliationRows) {
  const auto rows = ReconcileReferenceFigures();
  ASSERT_EQ(rows.size(), 4u);
  const std::int64_t derived[] = {1525272, 1016848, 508424, 911736};
  const double reference[] = {1.5e6, 1.0e6, 508e3, 911e3};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].derived, derived[i]);
    EXPECT_DOUBLE_EQ(rows[i].reference, reference[i]);
    EXPECT_NEAR(rows[i].raw_deviation, (derived[i] - reference[i]) / reference[i], 1e-15);
    EXPECT_TRUE(rows[i].within_tolerance) << rows[i].name;
    EXPECT_LE(std::abs(rows[i].rounded_deviation), kReconciliationTolerance);
  }
  EXPECT_EQ(rows[2].rounded_deviation, 0.0);
}

}  // namespace
}  // namespace uwvos
