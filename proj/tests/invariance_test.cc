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

#include "invargeo/invariance.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "invargeo/atoms.h"
#include "test_support.h"

namespace invargeo {
namespace {

using testing::ExhaustiveCoverSize;
using testing::OracleDistance;
using testing::RandomPointSet;
using testing::RandomSmallGroup;

PointSet Atoms(std::initializer_list<AtomKind> kinds) {
  std::vector<Signal> points;
  for (AtomKind k : kinds) points.push_back(GenerateAtom({k}));
  return PointSet(std::move(points));
}

// Brute-force half minimum cross-transform distance.
double OracleSeparation(const TransformSet& ts, const PointSet& base) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t b = 0; b < ts.size(); ++b) {
      if (a == b) continue;
      for (const Signal& x : base.points()) {
        for (const Signal& y : base.points()) {
          best = std::min(best, OracleDistance(ts[a].Apply(x), ts[b].Apply(y)));
        }
      }
    }
  }
  return best / 2.0;
}

TEST(CoverMethodTest, RoundTripsNames) {
  EXPECT_EQ(ParseCoverMethod("exact"), CoverMethod::kExact);
  EXPECT_EQ(ParseCoverMethod("greedy"), CoverMethod::kGreedy);
  EXPECT_EQ(CoverMethodName(CoverMethod::kGreedy), "greedy");
  EXPECT_THROW(ParseCoverMethod("fast"), std::invalid_argument);
}

TEST(ProductSpaceTest, TransformMajorOrderWithIdentityFirst) {
  const PointSet base = Atoms({AtomKind::kCorner, AtomKind::kCurve});
  const TransformSet ts = RotationGroup(16, 16);
  const PointSet x = ProductSpace(ts, base);
  ASSERT_EQ(x.size(), 8u);
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_EQ(x[t * 2 + i], ts[t].Apply(base[i]));
    }
  }
}

TEST(ProductSpaceTest, FixedPointsCollapse) {
  const PointSet base = Atoms({AtomKind::kCross, AtomKind::kCircle});
  const PointSet x = ProductSpace(RotationGroup(16, 16), base);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x[0], base[0]);
  EXPECT_EQ(x[1], base[1]);
}

TEST(SeparationThresholdTest, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const TransformSet ts = RandomSmallGroup(rng, 6, 8);
    const PointSet base = RandomPointSet(rng, 4, 6);
    EXPECT_NEAR(SeparationThreshold(ts, base), OracleSeparation(ts, base),
                1e-12);
  }
}

TEST(SeparationThresholdTest, ZeroWhenATransformFixesAPoint) {
  const PointSet base = Atoms({AtomKind::kCross, AtomKind::kCorner});
  EXPECT_EQ(SeparationThreshold(RotationGroup(16, 16), base), 0.0);
}

TEST(SeparationThresholdTest, RejectsTrivialSet) {
  const PointSet base = Atoms({AtomKind::kCross});
  EXPECT_THROW(
      SeparationThreshold(TransformSet({Transform::Identity(256)}), base),
      std::invalid_argument);
}

TEST(IsometryTest, PermutationsAreIsometries) {
  std::mt19937_64 rng(22);
  const PointSet base = RandomPointSet(rng, 6, 16);
  const IsometryCheck check = CheckIsometry(TranslationGroup(4, 4), base);
  EXPECT_TRUE(check.ok);
  ASSERT_TRUE(check.worst.has_value());
  EXPECT_NEAR(check.worst->mapped_distance, check.worst->original_distance,
              1e-12);
}

TEST(IsometryTest, ContractionIsReportedWithWitness) {
  const PointSet base(
      {Signal({0.0, 0.0}), Signal({2.0, 0.0}), Signal({0.0, 3.0})});
  const std::vector<SignalMap> maps = {
      [](const Signal& x) { return x; },
      [](const Signal& x) { return Signal({x[0] * 0.5, x[1]}); }};
  const IsometryCheck check = CheckIsometry(maps, base);
  EXPECT_FALSE(check.ok);
  ASSERT_TRUE(check.worst.has_value());
  EXPECT_EQ(check.worst->transform, 1);
  EXPECT_EQ(check.worst->first, 0);
  EXPECT_EQ(check.worst->second, 1);
  EXPECT_DOUBLE_EQ(check.worst->original_distance, 2.0);
  EXPECT_DOUBLE_EQ(check.worst->mapped_distance, 1.0);
}

TEST(IsometryTest, SinglePointHasNoWitness) {
  const IsometryCheck check =
      CheckIsometry(TranslationGroup(2, 2), PointSet({Signal({1, 2, 3, 4})}));
  EXPECT_TRUE(check.ok);
  EXPECT_FALSE(check.worst.has_value());
}

TEST(DegenerateTest, RotationFixesCrossAndCircle) {
  const TransformSet rot = RotationGroup(16, 16);
  EXPECT_TRUE(
      CheckDegenerate(rot, Atoms({AtomKind::kCross, AtomKind::kCircle})));
  EXPECT_FALSE(
      CheckDegenerate(rot, Atoms({AtomKind::kCross, AtomKind::kCorner})));
  EXPECT_FALSE(
      CheckDegenerate(TranslationGroup(16, 16), Atoms({AtomKind::kCross})));
}

TEST(CoveringRatioTest, Values) {
  EXPECT_EQ(CoveringRatio(4, 1024), 0.0625);
  EXPECT_EQ(CoveringRatio(3, 3), 1.0);
  EXPECT_THROW(CoveringRatio(0, 3), std::invalid_argument);
}

TEST(AnalyzeTest, DegenerateGivesRatioOne) {
  const PointSet base = Atoms({AtomKind::kCross, AtomKind::kCircle});
  for (double eps : {0.05, 0.1, 0.5}) {
    const FactorizationReport r =
        Analyze(RotationGroup(16, 16), base, eps, CoverMethod::kExact);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.ratio, 1.0);
    EXPECT_EQ(r.product_size, 2);
    EXPECT_EQ(r.separation_threshold, 0.0);
    EXPECT_FALSE(r.ratio_bound_applicable);
  }
}

TEST(AnalyzeTest, RotatedCornerAndCurve) {
  const PointSet base = Atoms({AtomKind::kCorner, AtomKind::kCurve});
  const FactorizationReport r =
      Analyze(RotationGroup(16, 16), base, 0.01, CoverMethod::kExact);
  EXPECT_EQ(r.base_size, 2);
  EXPECT_EQ(r.product_size, 8);
  EXPECT_EQ(r.n_base.size, 2);
  EXPECT_EQ(r.n_product.size, 8);
  EXPECT_EQ(r.ratio, 0.5);
  EXPECT_GT(r.separation_threshold, 0.01);
  EXPECT_TRUE(r.isometry_ok);
  EXPECT_TRUE(r.ratio_bound_applicable);
  EXPECT_FALSE(r.degenerate);
}

TEST(AnalyzeTest, DuplicateBasePointsAreMerged) {
  const PointSet base =
      Atoms({AtomKind::kCorner, AtomKind::kCorner, AtomKind::kCurve});
  const FactorizationReport r =
      Analyze(RotationGroup(16, 16), base, 0.01, CoverMethod::kGreedy);
  EXPECT_EQ(r.base_size, 2);
  EXPECT_EQ(r.n_base.size, 2);
}

TEST(AnalyzeTest, RejectsBadArguments) {
  const PointSet base = Atoms({AtomKind::kCorner});
  const TransformSet rot = RotationGroup(16, 16);
  EXPECT_THROW(Analyze(rot, base, 0.0, CoverMethod::kExact),
               std::invalid_argument);
  EXPECT_THROW(Analyze(rot, PointSet(), 0.1, CoverMethod::kExact),
               std::invalid_argument);
  EXPECT_THROW(Analyze(TranslationGroup(4, 4), base, 0.1, CoverMethod::kExact),
               std::invalid_argument);
}

TEST(AnalyzeTest, RatioBoundHoldsWhenConditionsVerify) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> count(1, 6);
  int applicable = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const TransformSet ts = RandomSmallGroup(rng, 8, 8);
    const PointSet base = RandomPointSet(rng, count(rng), 8, 0.3);
    const double eps = 0.3 * SeparationThreshold(ts, base) + 0.02;
    const FactorizationReport r = Analyze(ts, base, eps, CoverMethod::kExact);
    const PointSet x = ProductSpace(ts, base);
    EXPECT_EQ(r.n_base.size, ExhaustiveCoverSize(base, eps));
    if (x.size() <= 24) {
      EXPECT_LE(r.n_product.size, static_cast<int>(x.size()));
    }
    if (r.ratio_bound_applicable) {
      ++applicable;
      EXPECT_LE(r.ratio,
                1.0 / std::sqrt(static_cast<double>(ts.size())) + 1e-15);
    }
  }
  EXPECT_GT(applicable, 10);
}

}  // namespace
}  // namespace invargeo
