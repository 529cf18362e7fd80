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

#include "invargeo/serialization.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <utility>
#include <vector>

namespace invargeo {
namespace {

using nlohmann::json;

// Re-raises JSON access errors as std::invalid_argument.
template <typename Fn>
auto Parse(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json DatasetToJson(const Dataset& dataset) {
  json samples = json::array();
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    const auto values = dataset.samples[i].values();
    samples.push_back(
        {{"label", dataset.samples.label(i)},
         {"pixels", std::vector<double>(values.begin(), values.end())}});
  }
  return {{"width", dataset.width},
          {"height", dataset.height},
          {"n_classes", dataset.n_classes},
          {"samples", std::move(samples)}};
}

Dataset DatasetFromJson(const json& j) {
  return Parse("dataset", [&] {
    Dataset dataset;
    dataset.width = j.at("width").get<int>();
    dataset.height = j.at("height").get<int>();
    dataset.n_classes = j.at("n_classes").get<int>();
    if (dataset.width < 1 || dataset.height < 1) {
      throw std::invalid_argument("dataset: non-positive grid size");
    }
    if (dataset.n_classes < 1) {
      throw std::invalid_argument("dataset: n_classes must be positive");
    }
    const std::size_t dim =
        static_cast<std::size_t>(dataset.width) * dataset.height;
    std::vector<Signal> points;
    std::vector<int> labels;
    for (const json& s : j.at("samples")) {
      const int label = s.at("label").get<int>();
      if (label < 0 || label >= dataset.n_classes) {
        throw std::invalid_argument("dataset: label out of range");
      }
      std::vector<double> pixels = s.at("pixels").get<std::vector<double>>();
      if (pixels.size() != dim) {
        throw std::invalid_argument("dataset: pixel count != width*height");
      }
      points.emplace_back(std::move(pixels));
      labels.push_back(label);
    }
    dataset.samples = PointSet(std::move(points), std::move(labels));
    return dataset;
  });
}

json ModelToJson(const Model& model) {
  std::vector<double> weights;
  weights.reserve(model.weights.size());
  for (Eigen::Index r = 0; r < model.weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.weights.cols(); ++c) {
      weights.push_back(model.weights(r, c));
    }
  }
  return {{"n_classes", model.n_classes()},
          {"dim", model.dim()},
          {"weights", std::move(weights)},
          {"bias", std::vector<double>(model.bias.data(),
                                       model.bias.data() + model.bias.size())}};
}

Model ModelFromJson(const json& j) {
  return Parse("model", [&] {
    const int n_classes = j.at("n_classes").get<int>();
    const int dim = j.at("dim").get<int>();
    const auto weights = j.at("weights").get<std::vector<double>>();
    const auto bias = j.at("bias").get<std::vector<double>>();
    if (n_classes < 1 || dim < 1 ||
        weights.size() != static_cast<std::size_t>(n_classes) * dim ||
        bias.size() != static_cast<std::size_t>(n_classes)) {
      throw std::invalid_argument("model: inconsistent shapes");
    }
    Eigen::MatrixXd w(n_classes, dim);
    for (int r = 0; r < n_classes; ++r) {
      for (int c = 0; c < dim; ++c) w(r, c) = weights[r * dim + c];
    }
    return Model(std::move(w),
                 Eigen::Map<const Eigen::VectorXd>(bias.data(), n_classes));
  });
}

json CoverResultToJson(const CoverResult& cover) {
  return {{"centers", cover.centers},
          {"size", cover.size},
          {"epsilon", cover.epsilon},
          {"certified_exact", cover.certified_exact},
          {"lower_bound", cover.lower_bound},
          {"nodes_explored", cover.nodes_explored},
          {"budget_exhausted", cover.budget_exhausted}};
}

CoverResult CoverResultFromJson(const json& j) {
  return Parse("cover", [&] {
    CoverResult cover;
    cover.centers = j.at("centers").get<std::vector<int>>();
    cover.size = j.at("size").get<int>();
    cover.epsilon = j.at("epsilon").get<double>();
    cover.certified_exact = j.at("certified_exact").get<bool>();
    cover.lower_bound = j.at("lower_bound").get<int>();
    cover.nodes_explored = j.value("nodes_explored", std::int64_t{0});
    cover.budget_exhausted = j.value("budget_exhausted", false);
    return cover;
  });
}

json ReportToJson(const FactorizationReport& report) {
  return {{"base_size", report.base_size},
          {"product_size", report.product_size},
          {"separation_threshold", report.separation_threshold},
          {"isometry_ok", report.isometry_ok},
          {"degenerate", report.degenerate},
          {"epsilon", report.epsilon},
          {"n_base", CoverResultToJson(report.n_base)},
          {"n_product", CoverResultToJson(report.n_product)},
          {"ratio", report.ratio},
          {"ratio_bound_applicable", report.ratio_bound_applicable}};
}

FactorizationReport ReportFromJson(const json& j) {
  return Parse("report", [&] {
    FactorizationReport report;
    report.base_size = j.at("base_size").get<int>();
    report.product_size = j.at("product_size").get<int>();
    report.separation_threshold = j.at("separation_threshold").get<double>();
    report.isometry_ok = j.at("isometry_ok").get<bool>();
    report.degenerate = j.at("degenerate").get<bool>();
    report.epsilon = j.at("epsilon").get<double>();
    report.n_base = CoverResultFromJson(j.at("n_base"));
    report.n_product = CoverResultFromJson(j.at("n_product"));
    report.ratio = j.at("ratio").get<double>();
    report.ratio_bound_applicable = j.at("ratio_bound_applicable").get<bool>();
    return report;
  });
}

void WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename onto " + path.string());
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace invargeo
