// Copyright 2026 The trigviz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.h"
#include "trigviz/pipeline.h"

namespace trigviz {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "trigviz");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("trigviz-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, HelpListsStagesFlagsAndDefaults) {
  const CliResult r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* needle : {"synth", "report", "diff", "--svm-lambda", "--projection-method",
                             "(default: umap)", "(default: 0.0001)", "Exit status"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
  }
}

TEST_F(CliTest, VersionAndUsageErrors) {
  EXPECT_EQ(run({"--version"}).out, "trigviz " + std::string(version()) + "\n");
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"deploy"}).code, 2);
  EXPECT_EQ(run({"--no-such-flag", "synth"}).code, 2);
  EXPECT_EQ(run({"--config", (dir_ / "missing.json").string(), "synth"}).code, 2);
}

TEST_F(CliTest, InvalidValuesMapToExitCodes) {
  const CliResult bad = run({"--svm-lambda", "-1", "--out", dir_.string(), "synth"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("svm.lambda"), std::string::npos);
  const CliResult missing = run({"--out", dir_.string(), "train"});
  EXPECT_EQ(missing.code, 3);
  EXPECT_NE(missing.err.find("synth"), std::string::npos);
  EXPECT_EQ(run({"--paths-corpus", (dir_ / "none.csv").string(), "ingest"}).code, 4);
}

TEST_F(CliTest, ConfigFileThenFlagsOverride) {
  fs::create_directories(dir_);
  const fs::path cfg = dir_ / "cfg.json";
  std::ofstream(cfg) << R"({"synth": {"n": 40, "seed": 5}, "output_dir": ")" << (dir_ / "run").string()
                     << "\"}";
  const CliResult r = run({"--config", cfg.string(), "synth", "--n", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir_ / "run" / "config.json");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("\"synth.n\": 30"), std::string::npos);
  EXPECT_NE(ss.str().find("\"synth.seed\": 5"), std::string::npos);
}

TEST_F(CliTest, TinyReport) {
  const CliResult r = run({"-o", dir_.string(), "--synth-n", "40", "--synth-corpus-n", "80",
                           "--svm-epochs", "10", "--projection-method", "pca", "report"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::is_regular_file(dir_ / "project/embedding-pca.csv"));
  EXPECT_TRUE(fs::is_regular_file(dir_ / "charts/embedding_scatter-training.svg"));
  EXPECT_NE(r.out.find("diff:"), std::string::npos);
}

}  // namespace
}  // namespace trigviz
