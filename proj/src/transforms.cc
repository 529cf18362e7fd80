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

#include "invargeo/transforms.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace invargeo {
namespace {

void CheckGrid(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
}

Transform Shift(int width, int height, int dx, int dy) {
  std::vector<int> perm(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const int src_r = ((r - dy) % height + height) % height;
      const int src_c = ((c - dx) % width + width) % width;
      perm[r * width + c] = src_r * width + src_c;
    }
  }
  return Transform(std::move(perm), "shift(" + std::to_string(dx) + "," +
                                        std::to_string(dy) + ")");
}

}  // namespace

Transform::Transform(std::vector<int> permutation, std::string name)
    : permutation_(std::move(permutation)), name_(std::move(name)) {
  if (permutation_.empty()) {
    throw std::invalid_argument("Transform: empty permutation");
  }
  std::vector<bool> seen(permutation_.size(), false);
  for (int p : permutation_) {
    if (p < 0 || static_cast<std::size_t>(p) >= permutation_.size() ||
        seen[p]) {
      throw std::invalid_argument("Transform: not a bijection");
    }
    seen[p] = true;
  }
}

Transform Transform::Identity(std::size_t dim) {
  std::vector<int> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = static_cast<int>(i);
  return Transform(std::move(perm), "id");
}

bool Transform::IsIdentity() const {
  for (std::size_t i = 0; i < permutation_.size(); ++i) {
    if (permutation_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Signal Transform::Apply(const Signal& x) const {
  if (x.dim() != dim()) {
    throw std::invalid_argument("Transform::Apply: dimension mismatch");
  }
  std::vector<double> out(dim());
  ApplyTo(x.values(), out);
  return Signal(std::move(out));
}

void Transform::ApplyTo(std::span<const double> x,
                        std::span<double> out) const {
  for (std::size_t i = 0; i < permutation_.size(); ++i) {
    out[i] = x[permutation_[i]];
  }
}

Transform Transform::Inverse() const {
  std::vector<int> inv(permutation_.size());
  for (std::size_t i = 0; i < permutation_.size(); ++i) {
    inv[permutation_[i]] = static_cast<int>(i);
  }
  return Transform(std::move(inv), "inv(" + name_ + ")");
}

Transform Compose(const Transform& outer, const Transform& inner) {
  if (outer.dim() != inner.dim()) {
    throw std::invalid_argument("Compose: dimension mismatch");
  }
  // outer(inner(x))[i] = inner(x)[outer[i]] = x[inner[outer[i]]].
  std::vector<int> perm(outer.dim());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    perm[i] = inner.permutation()[outer.permutation()[i]];
  }
  std::string name;
  if (inner.IsIdentity()) {
    name = outer.name();
  } else if (outer.IsIdentity()) {
    name = inner.name();
  } else {
    name = outer.name() + "*" + inner.name();
  }
  return Transform(std::move(perm), std::move(name));
}

TransformSet::TransformSet(std::vector<Transform> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw std::invalid_argument("TransformSet: empty");
  }
  if (!elements_.front().IsIdentity()) {
    throw std::invalid_argument("TransformSet: first element must be identity");
  }
  std::set<std::vector<int>> seen;
  for (const Transform& t : elements_) {
    if (t.dim() != elements_.front().dim()) {
      throw std::invalid_argument("TransformSet: mixed dimensions");
    }
    if (!seen.insert(t.permutation()).second) {
      throw std::invalid_argument("TransformSet: duplicate element " +
                                  t.name());
    }
  }
}

TransformSet TransformSet::FromTransforms(std::vector<Transform> elements) {
  if (elements.empty()) throw std::invalid_argument("TransformSet: empty");
  std::vector<Transform> unique;
  std::set<std::vector<int>> seen;
  unique.push_back(Transform::Identity(elements.front().dim()));
  seen.insert(unique.front().permutation());
  for (Transform& t : elements) {
    if (seen.insert(t.permutation()).second) unique.push_back(std::move(t));
  }
  return TransformSet(std::move(unique));
}

int TransformSet::IndexOf(const Transform& t) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].SameAs(t)) return static_cast<int>(i);
  }
  return -1;
}

TransformSet TranslationGroup(int width, int height) {
  CheckGrid(width, height);
  std::vector<Transform> elements;
  elements.reserve(static_cast<std::size_t>(width) * height);
  for (int dy = 0; dy < height; ++dy) {
    for (int dx = 0; dx < width; ++dx) {
      elements.push_back(Shift(width, height, dx, dy));
    }
  }
  return TransformSet(std::move(elements));
}

TransformSet RotationGroup(int width, int height) {
  CheckGrid(width, height);
  if (width != height) {
    throw std::invalid_argument("RotationGroup: grid must be square");
  }
  const int n = width;
  // Pixel (r, c) lands on (c, n-1-r), so output (r', c') reads input
  // (n-1-c', r').
  std::vector<int> perm(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) perm[r * n + c] = (n - 1 - c) * n + r;
  }
  const Transform generator(std::move(perm), "rot90");
  std::vector<Transform> elements;
  elements.push_back(Transform::Identity(generator.dim()));
  elements.push_back(generator);
  Transform r2 = Compose(generator, generator);
  Transform r3 = Compose(generator, r2);
  elements.emplace_back(r2.permutation(), "rot180");
  elements.emplace_back(r3.permutation(), "rot270");
  // A 1x1 grid has a single rotation.
  if (n == 1) return TransformSet({Transform::Identity(1)});
  return TransformSet(std::move(elements));
}

TransformSet ProductSet(const TransformSet& inner, const TransformSet& outer) {
  if (inner.dim() != outer.dim()) {
    throw std::invalid_argument("ProductSet: dimension mismatch");
  }
  std::vector<Transform> elements;
  elements.reserve(inner.size() * outer.size());
  for (const Transform& a : inner.elements()) {
    for (const Transform& b : outer.elements()) {
      elements.push_back(Compose(b, a));
    }
  }
  return TransformSet::FromTransforms(std::move(elements));
}

TransformSet TransRotationSet(int width, int height) {
  return ProductSet(RotationGroup(width, height),
                    TranslationGroup(width, height));
}

bool IsGroup(const TransformSet& ts) {
  std::set<std::vector<int>> members;
  bool has_identity = false;
  for (const Transform& t : ts.elements()) {
    members.insert(t.permutation());
    has_identity = has_identity || t.IsIdentity();
  }
  if (!has_identity) return false;
  for (const Transform& a : ts.elements()) {
    if (!members.count(a.Inverse().permutation())) return false;
    for (const Transform& b : ts.elements()) {
      if (!members.count(Compose(a, b).permutation())) return false;
    }
  }
  return true;
}

PointSet Orbit(const TransformSet& ts, const Signal& x) {
  if (x.dim() != ts.dim()) {
    throw std::invalid_argument("Orbit: dimension mismatch");
  }
  std::vector<Signal> images;
  images.reserve(ts.size());
  for (const Transform& t : ts.elements()) images.push_back(t.Apply(x));
  return PointSet::Deduplicated(std::move(images));
}

std::size_t StabilizerSize(const TransformSet& ts, const Signal& x) {
  std::size_t count = 0;
  for (const Transform& t : ts.elements()) {
    if (t.Apply(x) == x) ++count;
  }
  return count;
}

TransformSet TransformSetByName(const std::string& name, int width,
                                int height) {
  if (name == "translation") return TranslationGroup(width, height);
  if (name == "rot90") return RotationGroup(width, height);
  if (name == "transrot") return TransRotationSet(width, height);
  throw std::invalid_argument("unknown transform set '" + name +
                              "' (expected translation, rot90 or transrot)");
}

}  // namespace invargeo
