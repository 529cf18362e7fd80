// Copyright 2026 The invargeo Authors.
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

#include "cli.h"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "invargeo/serialization.h"

namespace invargeo::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("invargeo_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    unsetenv("INVARGEO_BUDGET");
  }
  void TearDown() override { fs::remove_all(dir_); }

  int RunCli(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }
  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  void WriteAtoms() {
    ASSERT_EQ(RunCli({"gen-atoms", "--out", Path("atoms.json")}), kOk)
        << err_.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, GenAtomsWritesFourCanonicalAtoms) {
  WriteAtoms();
  const Dataset d = DatasetFromJson(json::parse(ReadFile(Path("atoms.json"))));
  EXPECT_EQ(d.width, 16);
  EXPECT_EQ(d.n_classes, 4);
  EXPECT_EQ(d.samples.labels(), (std::vector<int>{0, 1, 2, 3}));
}

TEST_F(CliTest, GenAtomsSampledDataset) {
  ASSERT_EQ(RunCli({"gen-atoms", "--out", Path("rot.json"), "--group", "rot90",
                    "--per-class", "3", "--noise", "0.1", "--seed", "4"}),
            kOk);
  const Dataset d = DatasetFromJson(json::parse(ReadFile(Path("rot.json"))));
  EXPECT_EQ(d.samples.size(), 12u);
}

TEST_F(CliTest, AnalyzeWritesReportAndCsv) {
  WriteAtoms();
  ASSERT_EQ(RunCli({"analyze", "--dataset", Path("atoms.json"), "--group",
                    "rot90", "--epsilon", "0.1", "--subset", "cross,circle",
                    "--out", Path("report.json")}),
            kOk)
      << err_.str();
  const AnalysisReport r =
      AnalysisReportFromJson(json::parse(ReadFile(Path("report.json"))));
  EXPECT_TRUE(r.factorization.degenerate);
  EXPECT_EQ(r.factorization.ratio, 1.0);
  EXPECT_EQ(r.subset, (std::vector<int>{0, 1}));
  EXPECT_EQ(r.timestamp, "1970-01-01T00:00:00Z");
  EXPECT_EQ(r.tool_version, kToolVersion);
  std::istringstream lines(out_.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, AnalysisCsvHeader());
  EXPECT_EQ(row, AnalysisCsvRow(r));
}

TEST_F(CliTest, AnalyzeIsDeterministic) {
  WriteAtoms();
  const std::vector<std::string> base = {
      "analyze",   "--dataset", Path("atoms.json"), "--group", "rot90",
      "--epsilon", "0.05",      "--subset",         "2,3",     "--out"};
  auto a = base, b = base;
  a.push_back(Path("a.json"));
  b.push_back(Path("b.json"));
  ASSERT_EQ(RunCli(a), kOk);
  ASSERT_EQ(RunCli(b), kOk);
  EXPECT_EQ(ReadFile(Path("a.json")), ReadFile(Path("b.json")));
}

TEST_F(CliTest, AnalyzeBudgetExhaustionExitsTwo) {
  WriteAtoms();
  setenv("INVARGEO_BUDGET", "0", 1);
  EXPECT_EQ(
      RunCli({"analyze", "--dataset", Path("atoms.json"), "--group",
              "translation", "--epsilon", "1.0", "--out", Path("r.json")}),
      kBudgetExhausted);
  const AnalysisReport r =
      AnalysisReportFromJson(json::parse(ReadFile(Path("r.json"))));
  EXPECT_TRUE(r.factorization.n_base.budget_exhausted ||
              r.factorization.n_product.budget_exhausted);
  unsetenv("INVARGEO_BUDGET");
}

TEST_F(CliTest, UsageErrorsExitOne) {
  WriteAtoms();
  EXPECT_EQ(RunCli({}), kUsageError);
  EXPECT_EQ(RunCli({"frobnicate"}), kUsageError);
  EXPECT_EQ(RunCli({"analyze", "--dataset", Path("atoms.json")}), kUsageError);
  EXPECT_EQ(RunCli({"analyze", "--dataset", Path("atoms.json"), "--group",
                    "mirror", "--epsilon", "0.1", "--out", Path("x.json")}),
            kUsageError);
  EXPECT_EQ(RunCli({"analyze", "--dataset", Path("atoms.json"), "--group",
                    "rot90", "--epsilon", "-1", "--out", Path("x.json")}),
            kUsageError);
  EXPECT_EQ(RunCli({"bound", "--covering", "4", "--classes", "1", "--samples",
                    "10", "--delta", "0.05", "--margin", "1"}),
            kUsageError);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, IoErrorsExitThree) {
  EXPECT_EQ(RunCli({"analyze", "--dataset", Path("missing.json"), "--group",
                    "rot90", "--epsilon", "0.1", "--out", Path("x.json")}),
            kIoError);
  EXPECT_EQ(RunCli({"gen-atoms", "--out", Path("no/such/dir.json")}), kIoError);
}

TEST_F(CliTest, BoundPrintsJson) {
  ASSERT_EQ(RunCli({"bound", "--covering", "8", "--classes", "2", "--samples",
                    "32", "--delta", "1", "--margin", "0.5"}),
            kOk);
  const json j = json::parse(out_.str());
  EXPECT_NEAR(j.at("bound").get<double>(), std::sqrt(std::log(2.0)), 1e-15);
  EXPECT_EQ(j.at("covering_epsilon").get<double>(), 0.25);
}

TEST_F(CliTest, TrainBothModes) {
  ASSERT_EQ(RunCli({"gen-atoms", "--out", Path("rot.json"), "--group", "rot90",
                    "--per-class", "10", "--noise", "0.1", "--seed", "2"}),
            kOk);
  for (const std::string mode : {"none", "orbit-average"}) {
    ASSERT_EQ(RunCli({"train", "--dataset", Path("rot.json"), "--invariant",
                      mode, "--epochs", "100", "--seed", "3"}),
              kOk)
        << err_.str();
    const json j = json::parse(out_.str());
    EXPECT_EQ(j.at("n_train").get<int>(), 20);
    EXPECT_EQ(j.at("n_test").get<int>(), 20);
    EXPECT_LE(j.at("spectral_norm").get<double>(), 1.0 + 1e-6);
    EXPECT_GE(j.at("test_accuracy").get<double>(), 0.5);
    EXPECT_NO_THROW(ModelFromJson(j.at("model")));
  }
  EXPECT_EQ(RunCli({"train", "--dataset", Path("rot.json"), "--invariant",
                    "sometimes"}),
            kUsageError);
}

TEST_F(CliTest, GenAtomsIsByteIdenticalOnRerun) {
  ASSERT_EQ(RunCli({"gen-atoms", "--out", Path("a.json")}), kOk);
  ASSERT_EQ(RunCli({"gen-atoms", "--out", Path("b.json")}), kOk);
  EXPECT_EQ(ReadFile(Path("a.json")), ReadFile(Path("b.json")));
}

TEST_F(CliTest, AnalyzeLargeEpsilonGivesSingleBalls) {
  WriteAtoms();
  ASSERT_EQ(RunCli({"analyze", "--dataset", Path("atoms.json"), "--group",
                    "translation", "--epsilon", "2.0", "--method", "greedy",
                    "--out", Path("r.json")}),
            kOk)
      << err_.str();
  const json j = json::parse(ReadFile(Path("r.json")));
  EXPECT_EQ(j.at("n_base").at("size").get<int>(), 1);
  EXPECT_EQ(j.at("n_product").at("size").get<int>(), 1);
  EXPECT_EQ(j.at("ratio").get<double>(), 1.0);
}

TEST_F(CliTest, AnalysisReportJsonRoundTrips) {
  WriteAtoms();
  ASSERT_EQ(RunCli({"analyze", "--dataset", Path("atoms.json"), "--group",
                    "rot90", "--epsilon", "0.01", "--subset", "corner,curve",
                    "--out", Path("r.json")}),
            kOk);
  const json original = json::parse(ReadFile(Path("r.json")));
  EXPECT_EQ(AnalysisReportToJson(AnalysisReportFromJson(original)), original);
}

TEST_F(CliTest, BoundShrinksBySqrtTwoWhenSamplesDouble) {
  ASSERT_EQ(RunCli({"bound", "--covering", "10", "--classes", "3", "--samples",
                    "50", "--delta", "0.05", "--margin", "1"}),
            kOk);
  const json a = json::parse(out_.str());
  ASSERT_EQ(RunCli({"bound", "--covering", "10", "--classes", "3", "--samples",
                    "100", "--delta", "0.05", "--margin", "1"}),
            kOk);
  const json b = json::parse(out_.str());
  for (const char* key : {"bound", "complexity_term", "confidence_term"}) {
    EXPECT_NEAR(a.at(key).get<double>() / b.at(key).get<double>(),
                std::sqrt(2.0), 1e-14)
        << key;
  }
}

TEST_F(CliTest, TrainIsDeterministicAndZeroEpochsIsStable) {
  ASSERT_EQ(RunCli({"gen-atoms", "--out", Path("rot.json"), "--group", "rot90",
                    "--per-class", "5", "--noise", "0.1", "--seed", "6"}),
            kOk);
  const std::vector<std::string> args = {
      "train", "--dataset", Path("rot.json"), "--epochs", "20", "--seed", "5"};
  ASSERT_EQ(RunCli(args), kOk);
  const std::string first = out_.str();
  ASSERT_EQ(RunCli(args), kOk);
  EXPECT_EQ(out_.str(), first);
  ASSERT_EQ(RunCli({"train", "--dataset", Path("rot.json"), "--epochs", "0"}),
            kOk);
  EXPECT_LE(json::parse(out_.str()).at("spectral_norm").get<double>(),
            1.0 + 1e-6);
  EXPECT_EQ(RunCli({"train", "--dataset", Path("rot.json"), "--split", "1.0"}),
            kUsageError);
}

}  // namespace
}  // namespace invargeo::cli
