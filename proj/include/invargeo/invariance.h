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

// Factorization of an input space into transforms x base space, and the
// geometric conditions that decide how much smaller the base space is.
//
// Given a base set X0 and a transform set T (identity first), the input
// space is X = {t(x) : t in T, x in X0}. The covering ratio
//
//   R = sqrt(N(X0; eps) / N(X; eps))
//
// measures how much an invariant classifier's bound shrinks. Two sufficient
// conditions give R <= 1/sqrt(|T|) for eps < 1:
//
//   separation  d(t(x), t'(x')) > 2 eps  for all x, x' in X0 and t != t'
//   isometry    d(t(x), t(x')) >= d(x, x')  for all x, x' in X0 and t
//
// while the degenerate condition d(t(x), t'(x)) == 0 for all x and t != t'
// collapses X onto X0 and forces R == 1.

#ifndef INVARGEO_INVARIANCE_H_
#define INVARGEO_INVARIANCE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "invargeo/covering.h"
#include "invargeo/geometry.h"
#include "invargeo/transforms.h"

namespace invargeo {

enum class CoverMethod { kExact, kGreedy };

CoverMethod ParseCoverMethod(const std::string& name);
std::string CoverMethodName(CoverMethod method);

struct FactorizationReport {
  int base_size = 0;
  int product_size = 0;
  double separation_threshold = 0.0;  // eps*: separation holds iff eps < eps*
  bool isometry_ok = false;
  bool degenerate = false;
  double epsilon = 0.0;
  CoverResult n_base;
  CoverResult n_product;
  double ratio = 0.0;
  bool ratio_bound_applicable = false;
};

// Deduplicated {t(x)}, enumerated transform-major so the identity block
// reproduces the base order.
PointSet ProductSpace(const TransformSet& ts, const PointSet& base);

// eps* = 1/2 min_{t != t', x, x'} d(t(x), t'(x')).
// Throws std::invalid_argument when ts.size() < 2 or dimensions differ.
double SeparationThreshold(const TransformSet& ts, const PointSet& base);

using SignalMap = std::function<Signal(const Signal&)>;

struct IsometryWitness {
  int transform = 0;
  int first = 0;
  int second = 0;
  double original_distance = 0.0;
  double mapped_distance = 0.0;
};

// Mapped distances may fall short of the originals by this relative amount
// and still count as preserved; absorbs summation-order rounding.
inline constexpr double kIsometryRelTol = 1e-12;

struct IsometryCheck {
  bool ok = true;
  // Pair minimizing mapped - original distance; absent for single-point
  // bases.
  std::optional<IsometryWitness> worst;
};

IsometryCheck CheckIsometry(std::span<const SignalMap> maps,
                            const PointSet& base);
IsometryCheck CheckIsometry(const TransformSet& ts, const PointSet& base);

// True iff every base point is fixed by every transform.
// Throws std::invalid_argument when ts.size() < 2.
bool CheckDegenerate(const TransformSet& ts, const PointSet& base);

// sqrt(n_base / n_product). Shared with the bound arithmetic so both report
// identical bits.
double CoveringRatio(std::int64_t n_base, std::int64_t n_product);

// Builds X, checks every condition and covers X0 and X at `eps`.
// The base is deduplicated first. When both covers are certified exact,
// enforces R <= 1/sqrt(T) under the applicable conditions and R == 1 for a
// degenerate factorization; a violation throws std::logic_error.
FactorizationReport Analyze(const TransformSet& ts, const PointSet& base,
                            double eps, CoverMethod method,
                            std::int64_t node_budget = kDefaultNodeBudget);

}  // namespace invargeo

#endif  // INVARGEO_INVARIANCE_H_
