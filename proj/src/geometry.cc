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

#include "invargeo/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace invargeo {
namespace {

bool LexLess(const Signal& a, const Signal& b) {
  const auto va = a.values();
  const auto vb = b.values();
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(),
                                      vb.end());
}

// Indices of the first occurrence of each distinct point, ascending.
std::vector<std::size_t> FirstOccurrences(const std::vector<Signal>& points,
                                          double tolerance) {
  std::vector<std::size_t> kept;
  if (tolerance == 0.0) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return LexLess(points[a], points[b]);
                     });
    for (std::size_t k = 0; k < order.size();) {
      std::size_t run_end = k + 1;
      while (run_end < order.size() &&
             points[order[run_end]] == points[order[k]]) {
        ++run_end;
      }
      // stable_sort keeps the smallest index at the head of each run.
      kept.push_back(order[k]);
      k = run_end;
    }
    std::sort(kept.begin(), kept.end());
    return kept;
  }
  const double tol2 = tolerance * tolerance;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool duplicate = false;
    for (std::size_t k : kept) {
      if (SquaredDistance(points[i], points[k]) <= tol2) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(i);
  }
  return kept;
}

}  // namespace

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("Signal: dimension must be positive");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Signal: non-finite value");
    }
  }
}

double Signal::Norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

double SquaredDistance(const Signal& a, const Signal& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("Distance: dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
  const auto va = a.values();
  const auto vb = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const double diff = va[i] - vb[i];
    sum += diff * diff;
  }
  return sum;
}

double Distance(const Signal& a, const Signal& b) {
  return std::sqrt(SquaredDistance(a, b));
}

PointSet::PointSet(std::vector<Signal> points,
                   std::optional<std::vector<int>> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (labels_ && labels_->size() != points_.size()) {
    throw std::invalid_argument("PointSet: label count != point count");
  }
  if (!points_.empty()) dim_ = points_.front().dim();
  for (const Signal& p : points_) {
    if (p.dim() != dim_) {
      throw std::invalid_argument("PointSet: mixed signal dimensions");
    }
  }
}

PointSet PointSet::Deduplicated(std::vector<Signal> points,
                                std::optional<std::vector<int>> labels,
                                double tolerance) {
  return PointSet(std::move(points), std::move(labels)).Deduplicate(tolerance);
}

PointSet PointSet::Deduplicate(double tolerance) const {
  if (tolerance < 0.0) {
    throw std::invalid_argument("Deduplicate: negative tolerance");
  }
  const std::vector<std::size_t> kept = FirstOccurrences(points_, tolerance);
  std::vector<Signal> points;
  points.reserve(kept.size());
  std::optional<std::vector<int>> labels;
  if (labels_) labels.emplace();
  for (std::size_t i : kept) {
    points.push_back(points_[i]);
    if (labels) labels->push_back((*labels_)[i]);
  }
  return PointSet(std::move(points), std::move(labels));
}

const std::vector<int>& PointSet::labels() const {
  if (!labels_) throw std::logic_error("PointSet: no labels");
  return *labels_;
}

PointSet PointSet::FilterByLabel(std::span<const int> keep) const {
  const std::vector<int>& all = labels();
  std::vector<Signal> points;
  std::vector<int> labels;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), all[i]) != keep.end()) {
      points.push_back(points_[i]);
      labels.push_back(all[i]);
    }
  }
  return PointSet(std::move(points), std::move(labels));
}

bool PointSet::SameSetAs(const PointSet& other) const {
  std::vector<Signal> a = Deduplicate().points_;
  std::vector<Signal> b = other.Deduplicate().points_;
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end(), LexLess);
  std::sort(b.begin(), b.end(), LexLess);
  return a == b;
}

DistanceMatrix ComputeDistanceMatrix(const PointSet& points) {
  if (points.empty()) {
    throw std::invalid_argument("ComputeDistanceMatrix: empty point set");
  }
  DistanceMatrix dm;
  const std::size_t n = points.size();
  dm.n_ = n;
  dm.entries_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = Distance(points[i], points[j]);
      dm.entries_[i * n + j] = d;
      dm.entries_[j * n + i] = d;
    }
  }
  return dm;
}

double MinOffDiagonal(const DistanceMatrix& dm) {
  if (dm.size() < 2) {
    throw std::invalid_argument("MinOffDiagonal: need at least two points");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = i + 1; j < dm.size(); ++j) {
      best = std::min(best, dm(i, j));
    }
  }
  return best;
}

double Diameter(const DistanceMatrix& dm) {
  double best = 0.0;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = i + 1; j < dm.size(); ++j) {
      best = std::max(best, dm(i, j));
    }
  }
  return best;
}

}  // namespace invargeo
