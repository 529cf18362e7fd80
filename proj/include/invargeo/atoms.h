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

// Procedural toy atoms (cross, circle, corner, curve) and sampled datasets.
//
// Canonical 16x16 pixels, value 1 on the shape before normalization:
//   cross   rows {7, 8} and columns {7, 8}, full length
//   circle  4.0 <= |p - (7.5, 7.5)| <= 5.5
//   corner  L with arms along row 3 and column 3, length 8, thickness 2
//   curve   top-left quadrant of the circle plus a one-pixel tail
// Cross and circle are fixed by rot90; corner and curve have four distinct
// rotations. Other even square sizes >= 8 scale these proportionally.

#ifndef INVARGEO_ATOMS_H_
#define INVARGEO_ATOMS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "invargeo/geometry.h"
#include "invargeo/transforms.h"

namespace invargeo {

enum class AtomKind { kCross, kCircle, kCorner, kCurve };

inline constexpr AtomKind kAllAtoms[] = {AtomKind::kCross, AtomKind::kCircle,
                                         AtomKind::kCorner, AtomKind::kCurve};

std::string AtomName(AtomKind kind);
// Throws std::invalid_argument for unknown names.
AtomKind ParseAtomKind(const std::string& name);

struct AtomSpec {
  AtomKind kind = AtomKind::kCross;
  int width = 16;
  int height = 16;
  bool normalize = true;
};

// Throws std::invalid_argument unless width == height, even and >= 8.
Signal GenerateAtom(const AtomSpec& spec);

// Labeled samples t(atom) + N(0, noise_sigma^2) noise, t uniform over `ts`,
// label = position in `atoms`. Class-major order; deterministic in `seed`.
PointSet GenerateDataset(std::span<const AtomSpec> atoms,
                         const TransformSet& ts, int per_class,
                         double noise_sigma, std::uint64_t seed);

// The four canonical atoms, labels 0..3 in kAllAtoms order.
PointSet CanonicalAtoms(int size = 16);

}  // namespace invargeo

#endif  // INVARGEO_ATOMS_H_
