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

// The `invargeo` command line: gen-atoms, analyze, bound and train.
//
// Exit codes: 0 success, 1 usage or parse error, 2 exact search ran out of
// node budget (the report is still written), 3 I/O error.

#ifndef INVARGEO_TOOLS_CLI_H_
#define INVARGEO_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "invargeo/invariance.h"
#include "json.hpp"

namespace invargeo::cli {

inline constexpr char kToolVersion[] = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kBudgetExhausted = 2,
  kIoError = 3,
};

struct AnalysisReport {
  FactorizationReport factorization;
  std::string dataset;
  std::string group;
  std::string method;
  std::vector<int> subset;  // empty: all labels
  std::string timestamp;
  std::string tool_version;
};

nlohmann::json AnalysisReportToJson(const AnalysisReport& report);
AnalysisReport AnalysisReportFromJson(const nlohmann::json& j);

// Column order of the CSV row written by `analyze`.
std::string AnalysisCsvHeader();
std::string AnalysisCsvRow(const AnalysisReport& report);

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace invargeo::cli

#endif  // INVARGEO_TOOLS_CLI_H_
