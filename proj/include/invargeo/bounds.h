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

// Generalization-error bounds for stable classifiers under the 0-1 loss.
//
// With probability at least 1 - delta,
//
//   GE <= sqrt(2 ln2 * n_classes * N / m) + sqrt(2 ln(1/delta) / m)
//
// where N is the covering number of the input space at radius margin/2 for a
// non-invariant classifier, or of the base space for an invariant one.

#ifndef INVARGEO_BOUNDS_H_
#define INVARGEO_BOUNDS_H_

#include <cstdint>

namespace invargeo {

struct GeBoundParams {
  int n_classes = 2;
  std::int64_t m = 1;
  double delta = 0.05;
  double margin = 1.0;

  // Throws std::invalid_argument unless n_classes >= 2, m >= 1,
  // delta in (0, 1] and margin > 0.
  void Validate() const;
  // Radius at which the covering number enters the bound.
  double covering_epsilon() const { return margin / 2.0; }
};

struct GeBound {
  double complexity_term = 0.0;
  double confidence_term = 0.0;
  double total = 0.0;
};

GeBound ComputeGeBound(const GeBoundParams& params, std::int64_t covering);

struct BoundPair {
  double invariant_bound = 0.0;
  double noninvariant_bound = 0.0;
  // sqrt(n_base / n_product): ratio of the complexity terms.
  double first_term_ratio = 0.0;
};

// Requires 1 <= n_base <= n_product.
BoundPair ComputeBoundPair(const GeBoundParams& params, std::int64_t n_base,
                           std::int64_t n_product);

}  // namespace invargeo

#endif  // INVARGEO_BOUNDS_H_
