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

#include "invargeo/atoms.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace invargeo {
namespace {

using Grid = std::vector<double>;

bool InRing(int r, int c, int n) {
  const double s = n / 16.0;
  const double center = (n - 1) / 2.0;
  const double dr = r - center;
  const double dc = c - center;
  const double dist = std::sqrt(dr * dr + dc * dc);
  return dist >= 4.0 * s && dist <= 5.5 * s;
}

Grid Cross(int n) {
  Grid g(n * n, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (r == n / 2 - 1 || r == n / 2 || c == n / 2 - 1 || c == n / 2) {
        g[r * n + c] = 1.0;
      }
    }
  }
  return g;
}

Grid Circle(int n) {
  Grid g(n * n, 0.0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (InRing(r, c, n)) g[r * n + c] = 1.0;
    }
  }
  return g;
}

Grid Corner(int n) {
  const double s = n / 16.0;
  const int offset = static_cast<int>(std::lround(3 * s));
  const int length = static_cast<int>(std::lround(8 * s));
  const int thickness = std::max(1, static_cast<int>(std::lround(2 * s)));
  Grid g(n * n, 0.0);
  for (int a = offset; a < offset + length; ++a) {
    for (int b = offset; b < offset + thickness; ++b) {
      g[b * n + a] = 1.0;  // horizontal arm
      g[a * n + b] = 1.0;  // vertical arm
    }
  }
  return g;
}

Grid Curve(int n) {
  Grid g(n * n, 0.0);
  const int half = n / 2;
  int tail_col = n;
  for (int r = 0; r < half; ++r) {
    for (int c = 0; c < half; ++c) {
      if (!InRing(r, c, n)) continue;
      g[r * n + c] = 1.0;
      if (r == half - 1) tail_col = std::min(tail_col, c);
    }
  }
  // Extend the arc's lower end by one pixel across the quadrant boundary.
  g[half * n + tail_col] = 1.0;
  return g;
}

}  // namespace

std::string AtomName(AtomKind kind) {
  switch (kind) {
    case AtomKind::kCross:
      return "cross";
    case AtomKind::kCircle:
      return "circle";
    case AtomKind::kCorner:
      return "corner";
    case AtomKind::kCurve:
      return "curve";
  }
  return "unknown";
}

AtomKind ParseAtomKind(const std::string& name) {
  for (AtomKind kind : kAllAtoms) {
    if (AtomName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown atom kind '" + name + "'");
}

Signal GenerateAtom(const AtomSpec& spec) {
  if (spec.width != spec.height || spec.width < 8 || spec.width % 2 != 0) {
    throw std::invalid_argument(
        "GenerateAtom: atoms need an even square grid of side >= 8");
  }
  const int n = spec.width;
  Grid g;
  switch (spec.kind) {
    case AtomKind::kCross:
      g = Cross(n);
      break;
    case AtomKind::kCircle:
      g = Circle(n);
      break;
    case AtomKind::kCorner:
      g = Corner(n);
      break;
    case AtomKind::kCurve:
      g = Curve(n);
      break;
    default:
      throw std::invalid_argument("GenerateAtom: unknown kind");
  }
  if (spec.normalize) {
    double sum = 0.0;
    for (double v : g) sum += v * v;
    const double scale = 1.0 / std::sqrt(sum);
    for (double& v : g) v *= scale;
  }
  return Signal(std::move(g));
}

PointSet GenerateDataset(std::span<const AtomSpec> atoms,
                         const TransformSet& ts, int per_class,
                         double noise_sigma, std::uint64_t seed) {
  if (atoms.empty()) throw std::invalid_argument("GenerateDataset: no atoms");
  if (per_class < 1) {
    throw std::invalid_argument("GenerateDataset: per_class must be >= 1");
  }
  if (!(noise_sigma >= 0.0)) {
    throw std::invalid_argument("GenerateDataset: negative noise");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Signal> samples;
  std::vector<int> labels;
  for (std::size_t label = 0; label < atoms.size(); ++label) {
    const Signal atom = GenerateAtom(atoms[label]);
    if (atom.dim() != ts.dim()) {
      throw std::invalid_argument("GenerateDataset: atom/transform mismatch");
    }
    for (int k = 0; k < per_class; ++k) {
      std::vector<double> pixels(atom.dim());
      ts[pick(rng)].ApplyTo(atom.values(), pixels);
      if (noise_sigma > 0.0) {
        for (double& v : pixels) v += noise_sigma * noise(rng);
      }
      samples.emplace_back(std::move(pixels));
      labels.push_back(static_cast<int>(label));
    }
  }
  return PointSet(std::move(samples), std::move(labels));
}

PointSet CanonicalAtoms(int size) {
  std::vector<Signal> atoms;
  std::vector<int> labels;
  for (AtomKind kind : kAllAtoms) {
    atoms.push_back(GenerateAtom({kind, size, size, true}));
    labels.push_back(static_cast<int>(labels.size()));
  }
  return PointSet(std::move(atoms), std::move(labels));
}

}  // namespace invargeo
