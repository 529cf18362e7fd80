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

#include "invargeo/covering.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace invargeo {
namespace {

void CheckEpsilon(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("covering: epsilon must be positive");
  }
}

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : words_((n + 63) / 64, 0) {}

  void Set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool Test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  bool Any() const {
    for (std::uint64_t w : words_) {
      if (w) return true;
    }
    return false;
  }
  // this & ~other.
  Bitset Minus(const Bitset& other) const {
    Bitset out = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      out.words_[k] &= ~other.words_[k];
    }
    return out;
  }
  int IntersectionCount(const Bitset& other) const {
    int count = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      count += std::popcount(words_[k] & other.words_[k]);
    }
    return count;
  }
  bool SubsetOf(const Bitset& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & ~other.words_[k]) return false;
    }
    return true;
  }
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        fn(static_cast<int>(k * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }
  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

// Closed eps-balls restricted to a subset of the points, in local indices.
// Ball membership is symmetric, so ball(i) also lists the candidate centers
// able to cover point i.
struct BallSystem {
  std::vector<int> global;  // local -> global index
  std::vector<std::vector<int>> balls;

  BallSystem(const DistanceMatrix& dm, double eps, std::vector<int> members)
      : global(std::move(members)), balls(global.size()) {
    const int k = static_cast<int>(global.size());
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (dm(global[a], global[b]) <= eps) balls[a].push_back(b);
      }
    }
  }
  int size() const { return static_cast<int>(global.size()); }
};

// Max-coverage greedy; ties go to the lowest local index.
std::vector<int> GreedyLocal(const BallSystem& sys) {
  const int k = sys.size();
  std::vector<int> gain(k);
  for (int i = 0; i < k; ++i) gain[i] = static_cast<int>(sys.balls[i].size());
  std::vector<char> covered(k, 0);
  int remaining = k;
  std::vector<int> chosen;
  while (remaining > 0) {
    int best = 0;
    for (int i = 1; i < k; ++i) {
      if (gain[i] > gain[best]) best = i;
    }
    chosen.push_back(best);
    for (int e : sys.balls[best]) {
      if (covered[e]) continue;
      covered[e] = 1;
      --remaining;
      for (int s : sys.balls[e]) --gain[s];
    }
  }
  return chosen;
}

// Connected components of the graph joining points within eps. A ball
// centered in one component never reaches another, so covers decompose.
std::vector<std::vector<int>> Components(const DistanceMatrix& dm, double eps) {
  const int n = static_cast<int>(dm.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      const auto row = dm.row(u);
      for (int v = 0; v < n; ++v) {
        if (comp[v] < 0 && row[v] <= eps) {
          comp[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

// Branch-and-bound minimum set cover over one component.
class CoverSearch {
 public:
  CoverSearch(const BallSystem& sys, std::int64_t budget)
      : sys_(sys), budget_(budget) {
    const int k = sys.size();
    ball_bits_.reserve(k);
    for (int i = 0; i < k; ++i) {
      Bitset b(k);
      for (int e : sys.balls[i]) b.Set(e);
      ball_bits_.push_back(std::move(b));
    }
    // A ball contained in another ball is never needed; among equal balls
    // the lowest index survives.
    std::vector<char> dominated(k, 0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k && !dominated[i]; ++j) {
        if (i == j || dominated[j]) continue;
        if (sys.balls[i].size() > sys.balls[j].size()) continue;
        if (!ball_bits_[i].SubsetOf(ball_bits_[j])) continue;
        if (sys.balls[i].size() < sys.balls[j].size() || j < i) {
          dominated[i] = 1;
        }
      }
    }
    candidates_.resize(k);
    for (int e = 0; e < k; ++e) {
      for (int s : sys.balls[e]) {
        if (!dominated[s]) candidates_[e].push_back(s);
      }
    }
    bound_order_.resize(k);
    std::iota(bound_order_.begin(), bound_order_.end(), 0);
    std::stable_sort(bound_order_.begin(), bound_order_.end(),
                     [&](int a, int b) {
                       return candidates_[a].size() < candidates_[b].size();
                     });
    hit_stamp_.assign(k, 0);
  }

  // Returns local centers; `initial` is a valid cover used as incumbent.
  std::vector<int> Solve(std::vector<int> initial) {
    best_ = std::move(initial);
    Bitset all(sys_.size());
    for (int i = 0; i < sys_.size(); ++i) all.Set(i);
    if (LowerBound(all) < static_cast<int>(best_.size())) {
      std::vector<int> chosen;
      Search(all, chosen);
    }
    std::sort(best_.begin(), best_.end());
    return best_;
  }

  std::int64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  // Greedily picks uncovered points whose candidate centers are pairwise
  // disjoint; each needs its own center.
  int LowerBound(const Bitset& uncovered) {
    ++stamp_;
    int count = 0;
    for (int e : bound_order_) {
      if (!uncovered.Test(e)) continue;
      bool blocked = false;
      for (int s : candidates_[e]) {
        if (hit_stamp_[s] == stamp_) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      ++count;
      for (int s : candidates_[e]) hit_stamp_[s] = stamp_;
    }
    return count;
  }

  void Search(const Bitset& uncovered, std::vector<int>& chosen) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (!uncovered.Any()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (static_cast<int>(chosen.size()) + LowerBound(uncovered) >=
        static_cast<int>(best_.size())) {
      return;
    }
    int pivot = -1;
    uncovered.ForEach([&](int e) {
      if (pivot < 0 || candidates_[e].size() < candidates_[pivot].size()) {
        pivot = e;
      }
    });
    std::vector<std::pair<int, int>> branches;  // (-gain, set)
    for (int s : candidates_[pivot]) {
      branches.emplace_back(-uncovered.IntersectionCount(ball_bits_[s]), s);
    }
    std::sort(branches.begin(), branches.end());
    for (const auto& [neg_gain, s] : branches) {
      chosen.push_back(s);
      Search(uncovered.Minus(ball_bits_[s]), chosen);
      chosen.pop_back();
      if (exhausted_) return;
    }
  }

  const BallSystem& sys_;
  std::int64_t budget_;
  std::vector<Bitset> ball_bits_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> bound_order_;
  std::vector<std::uint64_t> hit_stamp_;
  std::uint64_t stamp_ = 0;
  std::vector<int> best_;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
};

std::vector<int> AllIndices(const DistanceMatrix& dm) {
  std::vector<int> all(dm.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace

CoverResult GreedyCover(const DistanceMatrix& dm, double eps) {
  CheckEpsilon(eps);
  if (dm.size() == 0) throw std::invalid_argument("GreedyCover: empty set");
  const BallSystem sys(dm, eps, AllIndices(dm));
  CoverResult result;
  result.centers = GreedyLocal(sys);
  std::sort(result.centers.begin(), result.centers.end());
  result.size = static_cast<int>(result.centers.size());
  result.epsilon = eps;
  result.lower_bound = PackingLowerBound(dm, eps);
  result.certified_exact = result.size == result.lower_bound;
  return result;
}

CoverResult GreedyCover(const PointSet& points, double eps) {
  CheckEpsilon(eps);
  return GreedyCover(ComputeDistanceMatrix(points), eps);
}

CoverResult ExactCover(const DistanceMatrix& dm, double eps,
                       std::int64_t node_budget) {
  CheckEpsilon(eps);
  if (dm.size() == 0) throw std::invalid_argument("ExactCover: empty set");
  CoverResult result;
  result.epsilon = eps;
  std::int64_t remaining = node_budget;
  for (std::vector<int>& members : Components(dm, eps)) {
    if (members.size() == 1) {
      result.centers.push_back(members.front());
      continue;
    }
    const BallSystem sys(dm, eps, std::move(members));
    CoverSearch search(sys, std::max<std::int64_t>(remaining, 0));
    const std::vector<int> local = search.Solve(GreedyLocal(sys));
    remaining -= search.nodes();
    result.nodes_explored += search.nodes();
    result.budget_exhausted = result.budget_exhausted || search.exhausted();
    for (int c : local) result.centers.push_back(sys.global[c]);
  }
  std::sort(result.centers.begin(), result.centers.end());
  result.size = static_cast<int>(result.centers.size());
  result.lower_bound = PackingLowerBound(dm, eps);
  result.certified_exact = !result.budget_exhausted;
  return result;
}

CoverResult ExactCover(const PointSet& points, double eps,
                       std::int64_t node_budget) {
  CheckEpsilon(eps);
  return ExactCover(ComputeDistanceMatrix(points), eps, node_budget);
}

int PackingLowerBound(const DistanceMatrix& dm, double eps) {
  CheckEpsilon(eps);
  if (dm.size() == 0) {
    throw std::invalid_argument("PackingLowerBound: empty set");
  }
  std::vector<int> packed;
  for (int i = 0; i < static_cast<int>(dm.size()); ++i) {
    bool separated = true;
    for (int p : packed) {
      if (dm(i, p) <= 2.0 * eps) {
        separated = false;
        break;
      }
    }
    if (separated) packed.push_back(i);
  }
  return static_cast<int>(packed.size());
}

int PackingLowerBound(const PointSet& points, double eps) {
  CheckEpsilon(eps);
  return PackingLowerBound(ComputeDistanceMatrix(points), eps);
}

bool IsValidCover(const DistanceMatrix& dm, double eps,
                  std::span<const int> centers) {
  for (std::size_t i = 0; i < dm.size(); ++i) {
    bool covered = false;
    for (int c : centers) {
      if (c >= 0 && static_cast<std::size_t>(c) < dm.size() &&
          dm(i, c) <= eps) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace invargeo
