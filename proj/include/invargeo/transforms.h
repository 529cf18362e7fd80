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

// Finite transformation sets acting on signals as coordinate permutations:
// cyclic translations, 90 degree rotations and their products on W x H
// image grids.

#ifndef INVARGEO_TRANSFORMS_H_
#define INVARGEO_TRANSFORMS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "invargeo/geometry.h"

namespace invargeo {

// A bijection on signal coordinates: apply(x)[i] == x[permutation[i]].
class Transform {
 public:
  // Throws std::invalid_argument unless `permutation` is a bijection on
  // {0, ..., n-1} with n >= 1.
  Transform(std::vector<int> permutation, std::string name);

  static Transform Identity(std::size_t dim);

  std::size_t dim() const { return permutation_.size(); }
  const std::vector<int>& permutation() const { return permutation_; }
  const std::string& name() const { return name_; }
  bool IsIdentity() const;

  Signal Apply(const Signal& x) const;
  // In-place-free variant for hot loops; `out` must have dim() entries.
  void ApplyTo(std::span<const double> x, std::span<double> out) const;

  Transform Inverse() const;

  // Permutation equality; names are ignored.
  bool SameAs(const Transform& other) const {
    return permutation_ == other.permutation_;
  }

 private:
  std::vector<int> permutation_;
  std::string name_;
};

// (outer o inner)(x) == outer(inner(x)).
Transform Compose(const Transform& outer, const Transform& inner);

// Ordered, duplicate-free set of transforms whose first element is the
// identity.
class TransformSet {
 public:
  // Throws std::invalid_argument if empty, if dimensions differ, if the
  // first element is not the identity, or if two elements coincide.
  explicit TransformSet(std::vector<Transform> elements);

  // Like the constructor, but drops repeated permutations (first kept) and
  // moves the identity to the front, inserting it if absent.
  static TransformSet FromTransforms(std::vector<Transform> elements);

  std::size_t size() const { return elements_.size(); }
  std::size_t dim() const { return elements_.front().dim(); }
  const Transform& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Transform>& elements() const { return elements_; }

  // Index of the element equal to `t`, or -1.
  int IndexOf(const Transform& t) const;

 private:
  std::vector<Transform> elements_;
};

// Cyclic pixel shifts on a w x h grid; shift (dx, dy) sends pixel (r, c) to
// ((r + dy) mod h, (c + dx) mod w). Size w*h, identity first.
TransformSet TranslationGroup(int width, int height);

// {id, R, R^2, R^3} with R sending pixel (r, c) to (c, w - 1 - r).
// Throws std::invalid_argument for non-square grids.
TransformSet RotationGroup(int width, int height);

// All compositions outer o inner (inner applied first), deduplicated.
// Trans-rotation is ProductSet(RotationGroup, TranslationGroup): rotate,
// then translate.
TransformSet ProductSet(const TransformSet& inner, const TransformSet& outer);

// Translation group composed with the rotation group.
TransformSet TransRotationSet(int width, int height);

// Contains the identity and is closed under composition and inversion.
bool IsGroup(const TransformSet& ts);

// Deduplicated {t(x) : t in ts}.
PointSet Orbit(const TransformSet& ts, const Signal& x);

// Number of elements fixing x.
std::size_t StabilizerSize(const TransformSet& ts, const Signal& x);

// Resolves the CLI names "translation", "rot90" and "transrot".
TransformSet TransformSetByName(const std::string& name, int width, int height);

}  // namespace invargeo

#endif  // INVARGEO_TRANSFORMS_H_
