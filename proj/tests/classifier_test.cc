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

#include "invargeo/classifier.h"

#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <stdexcept>

#include "invargeo/atoms.h"
#include "test_support.h"

namespace invargeo {
namespace {

using testing::RandomSignal;

Eigen::MatrixXd RandomMatrix(std::mt19937_64& rng, int rows, int cols,
                             double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = normal(rng);
  }
  return m;
}

double OracleSigma(const Eigen::MatrixXd& w) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(w).singularValues()(0);
}

PointSet SmallDataset(std::mt19937_64& rng, int n, int dim, int classes) {
  std::vector<Signal> points;
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    points.push_back(RandomSignal(rng, dim));
    labels.push_back(i % classes);
  }
  return PointSet(std::move(points), std::move(labels));
}

TEST(ModelTest, ValidatesShapes) {
  EXPECT_THROW(Model(Eigen::MatrixXd::Zero(3, 2), Eigen::VectorXd::Zero(2)),
               std::invalid_argument);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
  w(0, 0) = std::nan("");
  EXPECT_THROW(Model(w, Eigen::VectorXd::Zero(2)), std::invalid_argument);
  const Model z = Model::Zero(3, 5);
  EXPECT_EQ(z.n_classes(), 3);
  EXPECT_EQ(z.dim(), 5);
}

TEST(InferenceTest, ForwardIsAffine) {
  Eigen::MatrixXd w(2, 3);
  w << 1, 2, 3, -1, 0, 1;
  const Model model(w, Eigen::Vector2d(0.5, -0.5));
  const Eigen::VectorXd s = Forward(model, Signal({1.0, 1.0, 1.0}));
  EXPECT_EQ(s(0), 6.5);
  EXPECT_EQ(s(1), -0.5);
  EXPECT_EQ(Predict(model, Signal({1.0, 1.0, 1.0})), 0);
  EXPECT_THROW(Forward(model, Signal({1.0})), std::invalid_argument);
}

TEST(InferenceTest, ArgMaxTieGoesToLowestIndex) {
  EXPECT_EQ(ArgMax(Eigen::Vector3d(1.0, 3.0, 3.0)), 1);
  EXPECT_EQ(ArgMax(Eigen::Vector3d(2.0, 2.0, 2.0)), 0);
}

TEST(InferenceTest, ScoreMarginIsScaledGap) {
  const Eigen::Vector3d s(3.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(ScoreMargin(s, 0), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(ScoreMargin(s, 1), -2.0 * std::sqrt(2.0));
  EXPECT_THROW(ScoreMargin(s, 3), std::invalid_argument);
  EXPECT_THROW(ScoreMargin(Eigen::VectorXd::Ones(1), 0), std::invalid_argument);
}

TEST(PowerIterationTest, DiagonalMatrix) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w.diagonal() << 0.5, -4.0, 2.0;
  const PowerIterationResult r = PowerIteration(w);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.sigma, 4.0, 1e-12);
}

TEST(PowerIterationTest, ZeroMatrix) {
  const PowerIterationResult r = PowerIteration(Eigen::MatrixXd::Zero(2, 4));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.sigma, 0.0);
}

TEST(PowerIterationTest, AgreesWithSvdOnRandomMatrices) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> size(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::MatrixXd w = RandomMatrix(rng, size(rng), size(rng));
    const double want = OracleSigma(w);
    const PowerIterationResult r = PowerIteration(w);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(std::abs(r.sigma - want), 1e-8 * want) << trial;
  }
}

TEST(StabilizeTest, ProjectsOntoUnitSpectralBall) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd w = RandomMatrix(rng, 4, 10, 3.0);
    const Model s = Stabilize(Model(w, Eigen::VectorXd::Ones(4)));
    EXPECT_LE(OracleSigma(s.weights), 1.0 + 1e-6);
    ASSERT_TRUE(s.spectral_norm_cache.has_value());
    EXPECT_NEAR(*s.spectral_norm_cache, 1.0, 1e-8);
  }
}

TEST(StabilizeTest, LeavesContractionsUnchanged) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(2, 2) * 0.5;
  const Model s = Stabilize(Model(w, Eigen::Vector2d(1.0, 2.0)));
  EXPECT_EQ(s.weights, w);
  EXPECT_EQ(s.bias, Eigen::Vector2d(1.0, 2.0));
}

TEST(OrbitMeanTest, InvariantAndFixesFixedPoints) {
  const TransformSet rot = RotationGroup(16, 16);
  const Signal corner = GenerateAtom({AtomKind::kCorner});
  const Signal mean = OrbitMean(rot, corner);
  for (const Transform& t : rot.elements()) EXPECT_EQ(t.Apply(mean), mean);
  EXPECT_EQ(OrbitMean(rot, mean), mean);
  const Signal cross = GenerateAtom({AtomKind::kCross});
  EXPECT_EQ(OrbitMean(rot, cross), cross);
}

TEST(InvariantModelTest, ScoresAreConstantOnOrbits) {
  std::mt19937_64 rng(43);
  const TransformSet rot = RotationGroup(8, 8);
  const InvariantModel inv(
      Model(RandomMatrix(rng, 4, 64), Eigen::VectorXd::Zero(4)), rot);
  for (int trial = 0; trial < 20; ++trial) {
    const Signal x = RandomSignal(rng, 64);
    const Eigen::VectorXd ref = inv.Forward(x);
    for (const Transform& t : rot.elements()) {
      EXPECT_LE((inv.Forward(t.Apply(x)) - ref).lpNorm<Eigen::Infinity>(),
                1e-12);
    }
    EXPECT_LE(InvariancePenalty(inv, x, rot), 1e-20);
  }
}

TEST(InvariantModelTest, RequiresGroup) {
  const TransformSet shifts = TranslationGroup(4, 4);
  const TransformSet not_group(
      {shifts[0], shifts[1]});  // identity and a single shift
  EXPECT_THROW(InvariantModel(Model::Zero(2, 16), not_group),
               std::invalid_argument);
  EXPECT_THROW(InvariantModel(Model::Zero(2, 9), shifts),
               std::invalid_argument);
}

TEST(InvariancePenaltyTest, MatchesDirectSum) {
  std::mt19937_64 rng(44);
  const TransformSet rot = RotationGroup(4, 4);
  const Model model(RandomMatrix(rng, 3, 16), Eigen::VectorXd::Zero(3));
  const Signal x = RandomSignal(rng, 16);
  double want = 0.0;
  for (const Transform& t : rot.elements()) {
    want += (Forward(model, x) - Forward(model, t.Apply(x))).squaredNorm();
  }
  EXPECT_NEAR(InvariancePenalty(model, x, rot), want, 1e-10 * want);
}

TEST(GradientCheckTest, SmallRelativeError) {
  std::mt19937_64 rng(45);
  const TransformSet rot = RotationGroup(4, 4);
  const PointSet batch = SmallDataset(rng, 10, 16, 3);
  const Model model(RandomMatrix(rng, 3, 16, 0.3),
                    Eigen::Vector3d(0.1, 0, -0.1));
  for (double lambda : {0.0, 1e-4, 1.0}) {
    EXPECT_LE(GradientCheck(model, batch, &rot, lambda, 1e-5, 1e-3), 1e-5)
        << lambda;
  }
}

TEST(TrainConfigTest, Validation) {
  TrainConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.learning_rate = 0.0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.invariance_weight = -1.0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

TEST(TrainTest, DecreasesObjectiveAndIsDeterministic) {
  std::mt19937_64 rng(46);
  const PointSet data = SmallDataset(rng, 30, 8, 3);
  TrainConfig cfg;
  cfg.epochs = 300;
  cfg.seed = 9;
  const Model a = Train(data, 3, cfg);
  const Model b = Train(data, 3, cfg);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
  const double start =
      EvaluateObjective(InitialModel(3, 8, 9), data, nullptr, 0.0, 1e-4).value;
  const double end = EvaluateObjective(a, data, nullptr, 0.0, 1e-4).value;
  EXPECT_LT(end, start);
  EXPECT_LE(SpectralNorm(a), 1.0 + 1e-6);
}

TEST(TrainTest, MinibatchAlsoLearns) {
  std::mt19937_64 rng(47);
  const PointSet data = SmallDataset(rng, 40, 6, 2);
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.batch_size = 8;
  const Model m = Train(data, 2, cfg);
  EXPECT_LT(ZeroOneError(m, data), 0.5);
}

TEST(TrainTest, PenaltyNeedsTransforms) {
  std::mt19937_64 rng(48);
  const PointSet data = SmallDataset(rng, 10, 16, 2);
  TrainConfig cfg;
  cfg.invariance_weight = 1.0;
  EXPECT_THROW(Train(data, 2, cfg), std::invalid_argument);
  const TransformSet rot = RotationGroup(4, 4);
  EXPECT_NO_THROW(Train(data, 2, cfg, &rot));
}

TEST(TrainTest, PenaltyShrinksNonInvariantComponent) {
  std::mt19937_64 rng(49);
  const TransformSet rot = RotationGroup(4, 4);
  const PointSet data = SmallDataset(rng, 20, 16, 2);
  TrainConfig cfg;
  cfg.epochs = 200;
  const Model plain = Train(data, 2, cfg);
  cfg.invariance_weight = 10.0;
  const Model penalized = Train(data, 2, cfg, &rot);
  double p_plain = 0.0, p_pen = 0.0;
  for (const Signal& x : data.points()) {
    p_plain += InvariancePenalty(plain, x, rot);
    p_pen += InvariancePenalty(penalized, x, rot);
  }
  EXPECT_LT(p_pen, 0.5 * p_plain);
}

TEST(TrainInvariantTest, BeatsPlainModelOnRotatedAtoms) {
  const TransformSet rot = RotationGroup(16, 16);
  const std::vector<AtomSpec> specs = {{AtomKind::kCross},
                                       {AtomKind::kCircle},
                                       {AtomKind::kCorner},
                                       {AtomKind::kCurve}};
  const PointSet train = GenerateDataset(specs, rot, 10, 0.1, 1);
  const PointSet test = GenerateDataset(specs, rot, 50, 0.1, 2);
  TrainConfig cfg;
  cfg.epochs = 300;
  const InvariantModel inv = TrainInvariant(train, 4, cfg, rot);
  const Model plain = Train(train, 4, cfg);
  EXPECT_LT(ZeroOneError(inv, test), ZeroOneError(plain, test));
  EXPECT_LE(ZeroOneError(inv, test), 0.15);
  EXPECT_EQ(SpectralNorm(inv.base()) <= 1.0 + 1e-6, true);
}

TEST(ErrorTest, RejectsEmptyData) {
  EXPECT_THROW(ZeroOneError(Model::Zero(2, 1), PointSet()),
               std::invalid_argument);
}

}  // namespace
}  // namespace invargeo
