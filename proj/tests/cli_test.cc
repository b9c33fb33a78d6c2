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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include "json.hpp"
#include "tests/testing/fixtures.h"
#include "uwvos/image_io.h"

namespace uwvos {
namespace {

using testing::BlankFrame;
using testing::FixtureVideo;
using testing::PaintRect;
using testing::TempDir;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the installed binary through the shell.
CliResult RunCli(const std::string& args, const std::string& env = "") {
  TempDir capture;
  const std::string command = env + " '" + std::string(UWVOS_CLI_PATH) + "' " + args + " > '" +
                              (capture / "out").string() + "' 2> '" +
                              (capture / "err").string() + "'";
  const int status = std::system(command.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ReadFileText(capture / "out");
  r.err = ReadFileText(capture / "err");
  return r;
}

std::string Quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

FixtureVideo Video(const std::string& id, int shift) {
  FixtureVideo v;
  v.id = id;
  for (int i = 0; i < 5; ++i) {
    MaskFrame f = BlankFrame(32, 24);
    PaintRect(f, 2 + shift + i, 3, 12 + shift + i, 12, 1);
    PaintRect(f, 20, 14, 27, 21 - (i % 3), 2);
    v.frames.push_back(f);
    v.images.push_back(testing::SolidImage(32, 24, 64, 120 + shift, 90));
  }
  v.categories = {{1, "goldfish"}, {2, "crab"}};
  return v;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    videos_ = {Video("alpha", 0), Video("beta", 3), Video("gamma", 1)};
    testing::WriteSplit(gt_.path(), videos_);
    for (const auto& v : videos_) {
      testing::WritePredictions(pred_.path(), v.id, testing::DefaultFrameNames(5), v.frames);
    }
    std::ofstream(gt_ / "taxonomy.json")
        << R"({"fish": ["goldfish"], "crustaceans": ["crab"]})";
  }

  TempDir gt_, pred_;
  std::vector<FixtureVideo> videos_;
};

TEST(CliBasicsTest, VersionAndUsage) {
  const CliResult v = RunCli("--version");
  EXPECT_EQ(v.exit_code, 0);
  EXPECT_NE(v.out.find(UWVOS_VERSION), std::string::npos);
  EXPECT_EQ(RunCli("").exit_code, kExitUsage);
  EXPECT_EQ(RunCli("frobnicate").exit_code, kExitUsage);
  EXPECT_EQ(RunCli("params --bogus").exit_code, kExitUsage);
  EXPECT_EQ(RunCli("params --bias-mode partial").exit_code, kExitUsage);
  EXPECT_EQ(RunCli("evaluate --gt /nonexistent/dir --pred /tmp").exit_code, kExitUsage);
  EXPECT_EQ(RunCli("params --help").exit_code, 0);
}

TEST(CliBasicsTest, ParamsReportsReconciliation) {
  const CliResult r = RunCli("params");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["command"], "params");
  EXPECT_EQ(doc["result"]["requested"]["total"], 1525272);
  EXPECT_EQ(doc["config"]["bias_mode"], "full");
  for (const auto& row : doc["result"]["reconciliation"]) EXPECT_TRUE(row["within_tolerance"]);

  const CliResult s4 = RunCli("params --stage4-only --bias-mode out-only --format csv");
  ASSERT_EQ(s4.exit_code, 0);
  EXPECT_NE(s4.out.find("configuration,"), std::string::npos);
  const CliResult req = RunCli("params --stage4-only --bias-mode out-only");
  EXPECT_EQ(nlohmann::json::parse(req.out)["result"]["requested"]["total"], 911400);
  const CliResult no_da = RunCli("params --no-da");
  EXPECT_EQ(nlohmann::json::parse(no_da.out)["result"]["requested"]["total"], 508424);
}

TEST(CliBasicsTest, GradcheckPassesAndFailsByThreshold) {
  const CliResult ok = RunCli("gradcheck --points 3");
  ASSERT_EQ(ok.exit_code, 0) << ok.err;
  const auto doc = nlohmann::json::parse(ok.out);
  EXPECT_EQ(doc["result"]["ops"].size(), 4u);
  EXPECT_EQ(RunCli("gradcheck --points 2 --threshold 1e-30").exit_code, kExitViolations);
  EXPECT_EQ(RunCli("gradcheck --dim 20").exit_code, kExitError);
}

TEST_F(CliTest, EvaluateIdentity) {
  const CliResult r =
      RunCli("evaluate --gt " + Quote(gt_.path()) + " --pred " + Quote(pred_.path()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["result"]["dataset"]["J&F"], 1.0);
  EXPECT_EQ(doc["result"]["dataset"]["J&F_dot"], 1.0);
  EXPECT_EQ(doc["config"]["policy"]["exclude_first"], true);

  const CliResult csv = RunCli("evaluate --format csv --no-exclude-first --boundary-tol 2 --gt " +
                               Quote(gt_.path()) + " --pred " + Quote(pred_.path()));
  ASSERT_EQ(csv.exit_code, 0);
  EXPECT_NE(csv.out.find("\ndataset,,,1,1,1,1,1,"), std::string::npos);
}

TEST_F(CliTest, EvaluateWritesOutFile) {
  TempDir out;
  const CliResult r = RunCli("evaluate --format svg --out " + Quote(out / "r.svg") + " --gt " +
                             Quote(gt_.path()) + " --pred " + Quote(pred_.path()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(ReadFileText(out / "r.svg").rfind("<svg", 0), 0u);
}

TEST_F(CliTest, AttributesAndStats) {
  std::ofstream(gt_ / "sidecar.json") << R"({"beta": {"*": {"CAM": true, "WC": "green"}}})";
  const CliResult a = RunCli("attributes --gt " + Quote(gt_.path()) + " --sidecar " +
                             Quote(gt_ / "sidecar.json") + " --pred " + Quote(pred_.path()));
  ASSERT_EQ(a.exit_code, 0) << a.err;
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["result"]["instances"].size(), 6u);
  EXPECT_EQ(doc["result"]["attribute_counts"]["CAM"], 2);
  EXPECT_EQ(doc["result"]["attribute_counts"]["MT"], 6);
  EXPECT_EQ(doc["result"]["breakdown"]["rows"][9]["J&F_dot"], 1.0);

  const CliResult s = RunCli("stats --gt " + Quote(gt_.path()) + " --taxonomy " +
                             Quote(gt_ / "taxonomy.json"));
  ASSERT_EQ(s.exit_code, 0) << s.err;
  const auto stats = nlohmann::json::parse(s.out);
  EXPECT_EQ(stats["result"]["summary"]["videos"], 3);
  EXPECT_EQ(stats["result"]["summary"]["annotations"], 30);
  EXPECT_EQ(stats["result"]["categories"]["superclasses"]["fish"]["instances"], 3);
  EXPECT_EQ(stats["result"]["channel_intensity"]["R"]["mode"], 65.0);
}

TEST_F(CliTest, ErrorsAreStructured) {
  std::ofstream(gt_ / "partial.json") << R"({"goldfish": "fish"})";
  const CliResult r = RunCli("stats --skip-intensity --gt " + Quote(gt_.path()) +
                             " --taxonomy " + Quote(gt_ / "partial.json"));
  EXPECT_EQ(r.exit_code, kExitError);
  EXPECT_TRUE(r.out.empty());
  const auto err = nlohmann::json::parse(r.err);
  EXPECT_EQ(err["error"]["code"], "UnmappedCategory");
  EXPECT_FALSE(err["error"]["message"].get<std::string>().empty());
}

TEST_F(CliTest, ValidateFlagsCorruption) {
  EXPECT_EQ(RunCli("validate --gt " + Quote(gt_.path())).exit_code, 0);
  MaskFrame bad = videos_[1].frames[2];
  bad.labels[0] = 7;
  WriteFileBytes(gt_ / "Annotations" / "beta" / "00010.png", testing::OraclePngEncode(bad, true));
  const CliResult r = RunCli("validate --gt " + Quote(gt_.path()));
  EXPECT_EQ(r.exit_code, kExitViolations);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["result"]["violations"], 1);
  EXPECT_EQ(RunCli("validate --video alpha --gt " + Quote(gt_.path())).exit_code, 0);
}

TEST_F(CliTest, SampleSubsetAndConfigFile) {
  TempDir work;
  const std::string base = "sample-subset --split custom --gt " + Quote(gt_.path());
  const CliResult r =
      RunCli(base + " --fraction 0.5 --seed 4 --manifest " + Quote(work / "m.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["result"]["count"], 2);
  const std::string manifest = ReadFileText(work / "m.txt");
  EXPECT_EQ(std::count(manifest.begin(), manifest.end(), '\n'), 3);

  std::ofstream(work / "cfg.toml") << "[sample-subset]\nfraction = 0.5\nseed = 4\n";
  const CliResult from_config = RunCli("--config " + Quote(work / "cfg.toml") + " " + base);
  ASSERT_EQ(from_config.exit_code, 0) << from_config.err;
  EXPECT_EQ(from_config.out, RunCli(base + " --fraction 0.5 --seed 4").out);
  // Flags win over the file.
  const CliResult flag_wins =
      RunCli("--config " + Quote(work / "cfg.toml") + " " + base + " --fraction 1.0");
  EXPECT_EQ(nlohmann::json::parse(flag_wins.out)["result"]["count"], 3);

  EXPECT_EQ(RunCli(base + " --fraction 1.5").exit_code, kExitUsage);
  EXPECT_EQ(RunCli("sample-subset --gt " + Quote(gt_.path()) + " --fraction 0.5 --split val")
                .exit_code,
            kExitError);
}

TEST_F(CliTest, ReportsIgnoreThreadCap) {
  const std::vector<std::string> commands = {
      "evaluate --gt " + Quote(gt_.path()) + " --pred " + Quote(pred_.path()),
      "attributes --gt " + Quote(gt_.path()),
      "stats --gt " + Quote(gt_.path()) + " --taxonomy " + Quote(gt_ / "taxonomy.json"),
      "validate --gt " + Quote(gt_.path()),
  };
  for (const auto& c : commands) {
    const CliResult one = RunCli(c, "UWVOS_THREADS=1");
    ASSERT_EQ(one.exit_code, 0) << c << one.err;
    EXPECT_EQ(one.out, RunCli(c, "UWVOS_THREADS=4").out) << c;
    EXPECT_EQ(one.out, RunCli(c, "UWVOS_THREADS=1").out) << c;
  }
}

TEST(CliInProcessTest, MainWritesToStreams) {
  const char* argv[] = {"uwvos", "params", "--format", "csv"};
  std::ostringstream out, err;
  EXPECT_EQ(Main(4, argv, out, err), 0);
  EXPECT_NE(out.str().find("1525272"), std::string::npos);
  EXPECT_TRUE(err.str().empty());
}

}  // namespace
}  // namespace uwvos
