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

#include "invargeo/bounds.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "invargeo/invariance.h"

namespace invargeo {

void GeBoundParams::Validate() const {
  if (n_classes < 2) throw std::invalid_argument("n_classes must be >= 2");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1]");
  }
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw std::invalid_argument("margin must be positive");
  }
}

GeBound ComputeGeBound(const GeBoundParams& params, std::int64_t covering) {
  params.Validate();
  if (covering < 1) throw std::invalid_argument("covering must be >= 1");
  const double m = static_cast<double>(params.m);
  GeBound bound;
  bound.complexity_term = std::sqrt(2.0 * std::numbers::ln2 * params.n_classes *
                                    static_cast<double>(covering) / m);
  bound.confidence_term = std::sqrt(2.0 * std::log(1.0 / params.delta) / m);
  bound.total = bound.complexity_term + bound.confidence_term;
  return bound;
}

BoundPair ComputeBoundPair(const GeBoundParams& params, std::int64_t n_base,
                           std::int64_t n_product) {
  if (n_base < 1 || n_product < n_base) {
    throw std::invalid_argument(
        "ComputeBoundPair: need 1 <= n_base <= n_product");
  }
  BoundPair pair;
  pair.invariant_bound = ComputeGeBound(params, n_base).total;
  pair.noninvariant_bound = ComputeGeBound(params, n_product).total;
  pair.first_term_ratio = CoveringRatio(n_base, n_product);
  return pair;
}

}  // namespace invargeo
