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

// JSON forms of datasets, models and analysis reports.
//
//   dataset  {"width", "height", "n_classes",
//             "samples": [{"label", "pixels": [row-major floats]}]}
//   model    {"n_classes", "dim", "weights": [row-major], "bias"}
//   report   FactorizationReport fields by name; covers nested as
//            {"centers", "size", "epsilon", "certified_exact",
//             "lower_bound"}

#ifndef INVARGEO_SERIALIZATION_H_
#define INVARGEO_SERIALIZATION_H_

#include <filesystem>
#include <string>

#include "invargeo/classifier.h"
#include "invargeo/geometry.h"
#include "invargeo/invariance.h"
#include "json.hpp"

namespace invargeo {

struct Dataset {
  int width = 0;
  int height = 0;
  int n_classes = 0;
  PointSet samples;  // labeled
};

// Parse errors raise std::invalid_argument.
nlohmann::json DatasetToJson(const Dataset& dataset);
Dataset DatasetFromJson(const nlohmann::json& j);

nlohmann::json ModelToJson(const Model& model);
Model ModelFromJson(const nlohmann::json& j);

nlohmann::json CoverResultToJson(const CoverResult& cover);
CoverResult CoverResultFromJson(const nlohmann::json& j);

nlohmann::json ReportToJson(const FactorizationReport& report);
FactorizationReport ReportFromJson(const nlohmann::json& j);

// Writes `contents` to a sibling temporary file and renames it over `path`.
// Throws std::runtime_error on I/O failure.
void WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& contents);
// Throws std::runtime_error when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

}  // namespace invargeo

#endif  // INVARGEO_SERIALIZATION_H_
