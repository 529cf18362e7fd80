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

#include "invargeo/invariance.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace invargeo {
namespace {

void CheckDims(const TransformSet& ts, const PointSet& base) {
  if (!base.empty() && base.dim() != ts.dim()) {
    throw std::invalid_argument("transform/base dimension mismatch");
  }
}

}  // namespace

CoverMethod ParseCoverMethod(const std::string& name) {
  if (name == "exact") return CoverMethod::kExact;
  if (name == "greedy") return CoverMethod::kGreedy;
  throw std::invalid_argument("unknown cover method '" + name + "'");
}

std::string CoverMethodName(CoverMethod method) {
  return method == CoverMethod::kExact ? "exact" : "greedy";
}

PointSet ProductSpace(const TransformSet& ts, const PointSet& base) {
  CheckDims(ts, base);
  std::vector<Signal> images;
  images.reserve(ts.size() * base.size());
  for (const Transform& t : ts.elements()) {
    for (const Signal& x : base.points()) images.push_back(t.Apply(x));
  }
  return PointSet::Deduplicated(std::move(images));
}

double SeparationThreshold(const TransformSet& ts, const PointSet& base) {
  CheckDims(ts, base);
  if (ts.size() < 2) {
    throw std::invalid_argument(
        "SeparationThreshold: need at least two transforms");
  }
  if (base.empty()) {
    throw std::invalid_argument("SeparationThreshold: empty base");
  }
  const std::size_t dim = ts.dim();
  const std::size_t n = base.size();
  const std::size_t count = ts.size() * n;
  // Row (t * n + i) holds t(x_i).
  std::vector<double> images(count * dim);
  for (std::size_t t = 0; t < ts.size(); ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      ts[t].ApplyTo(base[i].values(),
                    std::span<double>(images.data() + (t * n + i) * dim, dim));
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < count; ++a) {
    const double* pa = images.data() + a * dim;
    // Rows of the same transform are skipped: start at the next block.
    for (std::size_t b = (a / n + 1) * n; b < count; ++b) {
      const double* pb = images.data() + b * dim;
      double sum = 0.0;
      for (std::size_t k = 0; k < dim && sum < best; ++k) {
        const double diff = pa[k] - pb[k];
        sum += diff * diff;
      }
      best = std::min(best, sum);
    }
  }
  return 0.5 * std::sqrt(best);
}

IsometryCheck CheckIsometry(std::span<const SignalMap> maps,
                            const PointSet& base) {
  IsometryCheck check;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < maps.size(); ++t) {
    std::vector<Signal> mapped;
    mapped.reserve(base.size());
    for (const Signal& x : base.points()) mapped.push_back(maps[t](x));
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (std::size_t j = i + 1; j < base.size(); ++j) {
        const double before = Distance(base[i], base[j]);
        const double after = Distance(mapped[i], mapped[j]);
        if (after < before * (1.0 - kIsometryRelTol)) check.ok = false;
        if (after - before < worst_gap) {
          worst_gap = after - before;
          check.worst =
              IsometryWitness{static_cast<int>(t), static_cast<int>(i),
                              static_cast<int>(j), before, after};
        }
      }
    }
  }
  return check;
}

IsometryCheck CheckIsometry(const TransformSet& ts, const PointSet& base) {
  CheckDims(ts, base);
  std::vector<SignalMap> maps;
  maps.reserve(ts.size());
  for (const Transform& t : ts.elements()) {
    maps.emplace_back([&t](const Signal& x) { return t.Apply(x); });
  }
  return CheckIsometry(maps, base);
}

bool CheckDegenerate(const TransformSet& ts, const PointSet& base) {
  CheckDims(ts, base);
  if (ts.size() < 2) {
    throw std::invalid_argument(
        "CheckDegenerate: need at least two transforms");
  }
  for (const Signal& x : base.points()) {
    for (const Transform& t : ts.elements()) {
      if (!(t.Apply(x) == x)) return false;
    }
  }
  return true;
}

double CoveringRatio(std::int64_t n_base, std::int64_t n_product) {
  if (n_base < 1 || n_product < 1) {
    throw std::invalid_argument("CoveringRatio: covering numbers must be >= 1");
  }
  return std::sqrt(static_cast<double>(n_base) /
                   static_cast<double>(n_product));
}

FactorizationReport Analyze(const TransformSet& ts, const PointSet& base,
                            double eps, CoverMethod method,
                            std::int64_t node_budget) {
  if (!(eps > 0.0)) throw std::invalid_argument("Analyze: eps must be > 0");
  if (base.empty()) throw std::invalid_argument("Analyze: empty base");
  CheckDims(ts, base);
  const PointSet x0 = base.Deduplicate();
  const PointSet x = ProductSpace(ts, x0);

  FactorizationReport report;
  report.base_size = static_cast<int>(x0.size());
  report.product_size = static_cast<int>(x.size());
  report.epsilon = eps;
  report.separation_threshold = SeparationThreshold(ts, x0);
  report.isometry_ok = CheckIsometry(ts, x0).ok;
  report.degenerate = CheckDegenerate(ts, x0);

  const DistanceMatrix dm_base = ComputeDistanceMatrix(x0);
  const DistanceMatrix dm_product = ComputeDistanceMatrix(x);
  if (method == CoverMethod::kExact) {
    report.n_base = ExactCover(dm_base, eps, node_budget);
    report.n_product = ExactCover(dm_product, eps, node_budget);
  } else {
    report.n_base = GreedyCover(dm_base, eps);
    report.n_product = GreedyCover(dm_product, eps);
  }
  report.ratio = CoveringRatio(report.n_base.size, report.n_product.size);
  report.ratio_bound_applicable =
      eps < std::min(report.separation_threshold, 1.0) && report.isometry_ok;

  const bool exact =
      report.n_base.certified_exact && report.n_product.certified_exact;
  if (exact && report.ratio_bound_applicable &&
      static_cast<std::int64_t>(ts.size()) * report.n_base.size >
          report.n_product.size) {
    throw std::logic_error(
        "Analyze: covering ratio exceeds 1/sqrt(T) although "
        "separation and isometry hold");
  }
  if (report.degenerate && report.ratio != 1.0) {
    throw std::logic_error("Analyze: degenerate factorization with R != 1");
  }
  return report;
}

}  // namespace invargeo
