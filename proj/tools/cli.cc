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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "invargeo/atoms.h"
#include "invargeo/bounds.h"
#include "invargeo/classifier.h"
#include "invargeo/serialization.h"
#include "invargeo/transforms.h"

namespace invargeo::cli {
namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadOrThrow(const std::string& path) {
  try {
    return ReadFile(path);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

void WriteOrThrow(const std::string& path, const std::string& contents) {
  try {
    WriteFileAtomically(path, contents);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

Dataset LoadDataset(const std::string& path) {
  json j;
  try {
    j = json::parse(ReadOrThrow(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return DatasetFromJson(j);
}

std::int64_t NodeBudget() {
  const char* env = std::getenv("INVARGEO_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultNodeBudget;
  std::size_t used = 0;
  const long long value = std::stoll(env, &used);
  if (used != std::string(env).size() || value < 0) {
    throw std::invalid_argument(
        "INVARGEO_BUDGET must be a nonnegative integer");
  }
  return value;
}

// UTC ISO-8601; SOURCE_DATE_EPOCH pins it for reproducible reports.
std::string Timestamp() {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::stoll(env));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Comma-separated labels, as integers or atom names.
std::vector<int> ParseSubset(const std::string& text) {
  std::vector<int> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::all_of(item.begin(), item.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
      labels.push_back(std::stoi(item));
    } else {
      labels.push_back(static_cast<int>(ParseAtomKind(item)));
    }
  }
  if (labels.empty()) throw std::invalid_argument("--subset is empty");
  return labels;
}

// Shortest text that parses back to the same double.
std::string FormatDouble(double v) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

struct GenAtomsArgs {
  std::string out;
  std::string group = "none";
  int per_class = 1;
  double noise = 0.0;
  std::uint64_t seed = 0;
  int size = 16;
};

int GenAtoms(const GenAtomsArgs& a, std::ostream& out) {
  Dataset dataset;
  dataset.width = a.size;
  dataset.height = a.size;
  dataset.n_classes = 4;
  if (a.group == "none" && a.per_class == 1 && a.noise == 0.0) {
    dataset.samples = CanonicalAtoms(a.size);
  } else {
    const TransformSet ts =
        a.group == "none" ? TransformSet({Transform::Identity(
                                static_cast<std::size_t>(a.size) * a.size)})
                          : TransformSetByName(a.group, a.size, a.size);
    std::vector<AtomSpec> specs;
    for (AtomKind kind : kAllAtoms)
      specs.push_back({kind, a.size, a.size, true});
    dataset.samples = GenerateDataset(specs, ts, a.per_class, a.noise, a.seed);
  }
  WriteOrThrow(a.out, DatasetToJson(dataset).dump() + "\n");
  out << "wrote " << dataset.samples.size() << " samples to " << a.out << "\n";
  return kOk;
}

struct AnalyzeArgs {
  std::string dataset;
  std::string group;
  double epsilon = 0.0;
  std::string method = "exact";
  std::string subset;
  std::string out;
};

int Analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (!(a.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be > 0");
  const CoverMethod method = ParseCoverMethod(a.method);
  const Dataset dataset = LoadDataset(a.dataset);
  const TransformSet ts =
      TransformSetByName(a.group, dataset.width, dataset.height);
  AnalysisReport report;
  PointSet base = dataset.samples;
  if (!a.subset.empty()) {
    report.subset = ParseSubset(a.subset);
    base = base.FilterByLabel(report.subset);
    if (base.empty()) {
      throw std::invalid_argument("--subset selects no samples");
    }
  }
  report.factorization =
      invargeo::Analyze(ts, base, a.epsilon, method, NodeBudget());
  report.dataset = a.dataset;
  report.group = a.group;
  report.method = a.method;
  report.timestamp = Timestamp();
  report.tool_version = kToolVersion;
  WriteOrThrow(a.out, AnalysisReportToJson(report).dump(2) + "\n");
  out << AnalysisCsvHeader() << "\n" << AnalysisCsvRow(report) << "\n";
  const bool exhausted = report.factorization.n_base.budget_exhausted ||
                         report.factorization.n_product.budget_exhausted;
  return exhausted ? kBudgetExhausted : kOk;
}

struct BoundArgs {
  std::int64_t covering = 1;
  GeBoundParams params;
};

int Bound(const BoundArgs& a, std::ostream& out) {
  const GeBound bound = ComputeGeBound(a.params, a.covering);
  const json j = {{"bound", bound.total},
                  {"complexity_term", bound.complexity_term},
                  {"confidence_term", bound.confidence_term},
                  {"covering", a.covering},
                  {"n_classes", a.params.n_classes},
                  {"m", a.params.m},
                  {"delta", a.params.delta},
                  {"margin", a.params.margin},
                  {"covering_epsilon", a.params.covering_epsilon()}};
  out << j.dump(2) << "\n";
  return kOk;
}

struct TrainArgs {
  std::string dataset;
  std::string invariant = "none";
  double reg_invariance = 0.0;
  std::string group = "rot90";
  int epochs = 200;
  std::uint64_t seed = 0;
  double split = 0.5;
  std::string out;
};

int Train(const TrainArgs& a, std::ostream& out) {
  if (a.invariant != "none" && a.invariant != "orbit-average") {
    throw std::invalid_argument("--invariant must be none or orbit-average");
  }
  if (!(a.split > 0.0 && a.split < 1.0)) {
    throw std::invalid_argument("--split must lie in (0, 1)");
  }
  const Dataset dataset = LoadDataset(a.dataset);
  if (dataset.n_classes < 2) {
    throw std::invalid_argument("training needs at least two classes");
  }
  const TransformSet ts =
      TransformSetByName(a.group, dataset.width, dataset.height);

  const std::size_t n = dataset.samples.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(a.seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train =
      static_cast<std::size_t>(std::llround(a.split * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) {
    throw std::invalid_argument("--split leaves an empty train or test set");
  }
  std::vector<Signal> train_x, test_x;
  std::vector<int> train_y, test_y;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    auto& xs = k < n_train ? train_x : test_x;
    auto& ys = k < n_train ? train_y : test_y;
    xs.push_back(dataset.samples[i]);
    ys.push_back(dataset.samples.label(i));
  }
  const PointSet train(std::move(train_x), std::move(train_y));
  const PointSet test(std::move(test_x), std::move(test_y));

  TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.seed = a.seed;
  cfg.invariance_weight = a.reg_invariance;

  double train_error = 0.0, test_error = 0.0, ge = 0.0;
  Model model;
  if (a.invariant == "orbit-average") {
    const InvariantModel inv =
        TrainInvariant(train, dataset.n_classes, cfg, ts);
    train_error = ZeroOneError(inv, train);
    test_error = ZeroOneError(inv, test);
    ge = EmpiricalGe(inv, train, test);
    model = inv.base();
  } else {
    model = invargeo::Train(train, dataset.n_classes, cfg, &ts);
    train_error = ZeroOneError(model, train);
    test_error = ZeroOneError(model, test);
    ge = EmpiricalGe(model, train, test);
  }
  const json j = {{"dataset", a.dataset},
                  {"invariant", a.invariant},
                  {"group", a.group},
                  {"reg_invariance", a.reg_invariance},
                  {"epochs", a.epochs},
                  {"seed", a.seed},
                  {"split", a.split},
                  {"n_train", train.size()},
                  {"n_test", test.size()},
                  {"train_accuracy", 1.0 - train_error},
                  {"test_accuracy", 1.0 - test_error},
                  {"empirical_ge", ge},
                  {"spectral_norm", SpectralNorm(model)},
                  {"model", ModelToJson(model)}};
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    WriteOrThrow(a.out, text);
  }
  return kOk;
}

}  // namespace

json AnalysisReportToJson(const AnalysisReport& report) {
  json j = ReportToJson(report.factorization);
  j["dataset"] = report.dataset;
  j["group"] = report.group;
  j["method"] = report.method;
  j["subset"] = report.subset;
  j["timestamp"] = report.timestamp;
  j["tool_version"] = report.tool_version;
  return j;
}

AnalysisReport AnalysisReportFromJson(const json& j) {
  AnalysisReport report;
  report.factorization = ReportFromJson(j);
  try {
    report.dataset = j.at("dataset").get<std::string>();
    report.group = j.at("group").get<std::string>();
    report.method = j.at("method").get<std::string>();
    report.subset = j.at("subset").get<std::vector<int>>();
    report.timestamp = j.at("timestamp").get<std::string>();
    report.tool_version = j.at("tool_version").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("analysis report: ") + e.what());
  }
  return report;
}

std::string AnalysisCsvHeader() {
  return "dataset,group,method,epsilon,base_size,product_size,"
         "separation_threshold,isometry_ok,degenerate,n_base,n_base_exact,"
         "n_product,n_product_exact,ratio,ratio_bound_applicable,timestamp,"
         "tool_version";
}

std::string AnalysisCsvRow(const AnalysisReport& report) {
  const FactorizationReport& f = report.factorization;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::ostringstream os;
  os << report.dataset << ',' << report.group << ',' << report.method << ','
     << FormatDouble(f.epsilon) << ',' << f.base_size << ',' << f.product_size
     << ',' << FormatDouble(f.separation_threshold) << ','
     << flag(f.isometry_ok) << ',' << flag(f.degenerate) << ',' << f.n_base.size
     << ',' << flag(f.n_base.certified_exact) << ',' << f.n_product.size << ','
     << flag(f.n_product.certified_exact) << ',' << FormatDouble(f.ratio) << ','
     << flag(f.ratio_bound_applicable) << ',' << report.timestamp << ','
     << report.tool_version;
  return os.str();
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Covering-number analysis of invariant classifiers", "invargeo"};
  app.require_subcommand(1);

  GenAtomsArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-atoms", "Write the toy atom dataset manifest");
  gen_cmd->add_option("--out", gen.out, "Output JSON path")->required();
  gen_cmd->add_option("--group", gen.group,
                      "Transform set sampled per example (none, translation, "
                      "rot90, transrot)");
  gen_cmd->add_option("--per-class", gen.per_class, "Samples per atom")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--noise", gen.noise, "Gaussian pixel noise sigma")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "Sampling seed");

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Covering numbers and factorization conditions");
  analyze_cmd->add_option("--dataset", analyze.dataset)->required();
  analyze_cmd
      ->add_option("--group", analyze.group, "translation, rot90 or transrot")
      ->required();
  analyze_cmd->add_option("--epsilon", analyze.epsilon)->required();
  analyze_cmd->add_option("--method", analyze.method, "exact or greedy");
  analyze_cmd->add_option("--subset", analyze.subset,
                          "Comma-separated labels or atom names");
  analyze_cmd->add_option("--out", analyze.out, "Report JSON path")->required();

  BoundArgs bound;
  CLI::App* bound_cmd =
      app.add_subcommand("bound", "Evaluate the generalization-error bound");
  bound_cmd->add_option("--covering", bound.covering)->required();
  bound_cmd->add_option("--classes", bound.params.n_classes)->required();
  bound_cmd->add_option("--samples", bound.params.m)->required();
  bound_cmd->add_option("--delta", bound.params.delta)->required();
  bound_cmd->add_option("--margin", bound.params.margin)->required();

  TrainArgs train;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train a stable linear classifier");
  train_cmd->add_option("--dataset", train.dataset)->required();
  train_cmd->add_option("--invariant", train.invariant,
                        "none or orbit-average");
  train_cmd->add_option("--reg-invariance", train.reg_invariance)
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--group", train.group);
  train_cmd->add_option("--epochs", train.epochs)
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--split", train.split, "Training fraction");
  train_cmd->add_option("--out", train.out,
                        "Report JSON path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (gen_cmd->parsed()) return GenAtoms(gen, out);
    if (analyze_cmd->parsed()) return Analyze(analyze, out);
    if (bound_cmd->parsed()) return Bound(bound, out);
    if (train_cmd->parsed()) return Train(train, out);
  } catch (const IoError& e) {
    err << "invargeo: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "invargeo: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace invargeo::cli
