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

// Covering numbers of finite point sets.
//
// All covers are internal: centers are drawn from the point set itself, and
// a point x is covered by center c when d(x, c) <= eps. Computing the
// smallest such cover is a set-cover instance with one candidate set (the
// closed eps-ball) per point. Three solvers are provided:
//
//   GreedyCover        classic max-coverage greedy, ln(n)+1 approximation.
//   ExactCover         branch-and-bound, certified minimal unless the node
//                      budget runs out.
//   PackingLowerBound  size of a greedy 2*eps-separated subset; no internal
//                      ball contains two such points.
//
// For every instance PackingLowerBound <= ExactCover <= GreedyCover.

#ifndef INVARGEO_COVERING_H_
#define INVARGEO_COVERING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "invargeo/geometry.h"

namespace invargeo {

inline constexpr std::int64_t kDefaultNodeBudget = 10'000'000;

struct CoverResult {
  std::vector<int> centers;  // ascending point indices
  int size = 0;
  double epsilon = 0.0;
  bool certified_exact = false;
  int lower_bound = 0;  // packing bound
  // Diagnostics for the branch-and-bound search.
  std::int64_t nodes_explored = 0;
  bool budget_exhausted = false;
};

CoverResult GreedyCover(const PointSet& points, double eps);
CoverResult GreedyCover(const DistanceMatrix& dm, double eps);

CoverResult ExactCover(const PointSet& points, double eps,
                       std::int64_t node_budget = kDefaultNodeBudget);
CoverResult ExactCover(const DistanceMatrix& dm, double eps,
                       std::int64_t node_budget = kDefaultNodeBudget);

int PackingLowerBound(const PointSet& points, double eps);
int PackingLowerBound(const DistanceMatrix& dm, double eps);

// max_x min_{c in centers} d(x, c) <= eps.
bool IsValidCover(const DistanceMatrix& dm, double eps,
                  std::span<const int> centers);

}  // namespace invargeo

#endif  // INVARGEO_COVERING_H_
