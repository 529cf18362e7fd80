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

// Euclidean geometry on flattened signals: the metric every covering and
// separation computation in this library is built on.

#ifndef INVARGEO_GEOMETRY_H_
#define INVARGEO_GEOMETRY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace invargeo {

// A finite real vector of fixed dimension. Images are stored row-major; the
// grid shape is metadata carried elsewhere and never enters the metric.
class Signal {
 public:
  Signal() = default;
  // Throws std::invalid_argument on an empty vector or non-finite entries.
  explicit Signal(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double Norm() const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> values_;
};

// ||a - b||_2. Throws std::invalid_argument on dimension mismatch.
double Distance(const Signal& a, const Signal& b);
double SquaredDistance(const Signal& a, const Signal& b);

// Ordered collection of same-dimension signals with optional class labels.
// Construction never drops points; call Deduplicate() for set semantics.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Signal> points,
                    std::optional<std::vector<int>> labels = std::nullopt);

  // Keeps the first of every group of points within `tolerance` of an
  // earlier kept point. With tolerance 0 only exact duplicates go.
  static PointSet Deduplicated(
      std::vector<Signal> points,
      std::optional<std::vector<int>> labels = std::nullopt,
      double tolerance = 0.0);
  PointSet Deduplicate(double tolerance = 0.0) const;

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  // Zero for an empty set.
  std::size_t dim() const { return dim_; }
  const Signal& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Signal>& points() const { return points_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<int>& labels() const;
  int label(std::size_t i) const { return labels().at(i); }

  // Points whose label is in `keep`, in original order. Requires labels.
  PointSet FilterByLabel(std::span<const int> keep) const;

  // True iff both sets hold the same points, ignoring order and
  // multiplicity (exact comparison).
  bool SameSetAs(const PointSet& other) const;

 private:
  std::vector<Signal> points_;
  std::optional<std::vector<int>> labels_;
  std::size_t dim_ = 0;
};

// Dense symmetric pairwise distance table.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }

 private:
  friend DistanceMatrix ComputeDistanceMatrix(const PointSet& points);
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

// Throws std::invalid_argument for an empty set.
DistanceMatrix ComputeDistanceMatrix(const PointSet& points);

// min_{i != j} d(i, j). Throws std::invalid_argument when size < 2.
double MinOffDiagonal(const DistanceMatrix& dm);

// max_{i, j} d(i, j); zero for a single point.
double Diameter(const DistanceMatrix& dm);

}  // namespace invargeo

#endif  // INVARGEO_GEOMETRY_H_
