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

// Linear multiclass score maps f(x) = W x + b.
//
// The Jacobian of f is W everywhere, so stability (||J||_2 <= 1) is a
// spectral-norm constraint enforced by Stabilize(). Exact invariance to a
// transformation group comes from InvariantModel, which averages scores over
// the orbit of the input. Training minimizes
//
//   mean_i CE(f(x_i), y_i)
//     + lambda_inv * mean_i sum_t ||f(x_i) - f(t(x_i))||^2
//     + weight_decay * ||W||_F^2
//
// by deterministic gradient descent.

#ifndef INVARGEO_CLASSIFIER_H_
#define INVARGEO_CLASSIFIER_H_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "invargeo/geometry.h"
#include "invargeo/transforms.h"

namespace invargeo {

struct Model {
  Eigen::MatrixXd weights;  // n_classes x dim
  Eigen::VectorXd bias;     // n_classes
  // Set by Stabilize(): spectral norm of `weights` after projection.
  std::optional<double> spectral_norm_cache;

  Model() = default;
  // Throws std::invalid_argument on shape mismatch or non-finite entries.
  Model(Eigen::MatrixXd w, Eigen::VectorXd b);
  static Model Zero(int n_classes, int dim);

  int n_classes() const { return static_cast<int>(weights.rows()); }
  int dim() const { return static_cast<int>(weights.cols()); }
};

struct LabeledSample {
  Signal x;
  int y = 0;
};

Eigen::VectorXd Forward(const Model& model, const Signal& x);

// Index of the largest score; ties go to the lowest index.
int ArgMax(const Eigen::VectorXd& scores);
int Predict(const Model& model, const Signal& x);

// min_{j != y} sqrt(2) (s_y - s_j). Throws for fewer than two classes or an
// out-of-range label.
double ScoreMargin(const Eigen::VectorXd& scores, int y);
double ScoreMargin(const Model& model, const LabeledSample& sample);

struct PowerIterationOptions {
  int max_iterations = 100000;
  // Stop once ||A v - lambda v|| <= tolerance * lambda for A = W^T W.
  double tolerance = 1e-12;
  std::uint64_t seed = 0x5eed;
};

struct PowerIterationResult {
  double sigma = 0.0;  // largest singular value
  int iterations = 0;
  bool converged = false;
};

// Power iteration on W^T W.
PowerIterationResult PowerIteration(const Eigen::MatrixXd& w,
                                    const PowerIterationOptions& options = {});

// Throws std::runtime_error when power iteration does not converge.
double SpectralNorm(const Model& model);

// Scales W and b by 1 / max(1, ||W||_2). Positive scaling keeps argmax.
Model Stabilize(const Model& model);

// sum_t ||f(x) - f(t(x))||_2^2.
double InvariancePenalty(const Model& model, const Signal& x,
                         const TransformSet& ts);

// f_inv(x) = (1/T) sum_t f(t(x)) over a transformation group.
class InvariantModel {
 public:
  // Throws std::invalid_argument unless `group` is a group acting on the
  // model's input dimension.
  InvariantModel(Model base, TransformSet group);

  const Model& base() const { return base_; }
  const TransformSet& group() const { return group_; }

  Eigen::VectorXd Forward(const Signal& x) const;
  int Predict(const Signal& x) const;

 private:
  Model base_;
  TransformSet group_;
};

// Same penalty for the orbit-averaged scores; zero up to rounding when `ts`
// is a subset of the model's group.
double InvariancePenalty(const InvariantModel& model, const Signal& x,
                         const TransformSet& ts);

InvariantModel OrbitAverage(const Model& model, const TransformSet& group);

// (1/T) sum_t t(x). The result depends only on the multiset {t(x)}, so for
// a group it is exactly invariant and points it fixes are returned unchanged.
Signal OrbitMean(const TransformSet& ts, const Signal& x);

struct TrainConfig {
  int epochs = 200;
  // Upper bound on the step; the trainer never exceeds 1/L for the
  // objective's smoothness constant L.
  double learning_rate = 1.0;
  double weight_decay = 1e-4;
  double invariance_weight = 0.0;
  std::uint64_t seed = 0;
  // 0 means full batch.
  int batch_size = 0;

  void Validate() const;
};

struct Objective {
  double value = 0.0;
  Eigen::MatrixXd grad_weights;
  Eigen::VectorXd grad_bias;
};

// Full training objective on `batch` and its analytic gradient. `ts` may be
// null when invariance_weight is zero.
Objective EvaluateObjective(const Model& model, const PointSet& batch,
                            const TransformSet* ts, double invariance_weight,
                            double weight_decay);

// Gaussian N(0, 0.01^2) weights, zero bias.
Model InitialModel(int n_classes, int dim, std::uint64_t seed);

// Gradient descent from InitialModel(seed); Stabilize() is applied to the
// result. `ts` feeds the invariance penalty and is required when
// cfg.invariance_weight > 0.
Model Train(const PointSet& data, int n_classes, const TrainConfig& cfg,
            const TransformSet* ts = nullptr);

// Trains the base of an orbit-averaged model. Because f_inv(x) equals the
// base model applied to OrbitMean(x), this is Train() on orbit means.
InvariantModel TrainInvariant(const PointSet& data, int n_classes,
                              const TrainConfig& cfg,
                              const TransformSet& group);

// Largest coordinatewise |analytic - numeric| / max(|analytic|, |numeric|,
// 1e-8) over all weights and biases, with central differences of step h.
double GradientCheck(const Model& model, const PointSet& batch,
                     const TransformSet* ts, double invariance_weight, double h,
                     double weight_decay = 0.0);

// Fraction of misclassified samples.
double ZeroOneError(const Model& model, const PointSet& data);
double ZeroOneError(const InvariantModel& model, const PointSet& data);

// |train error - test error|. Throws for empty or unlabeled sets.
double EmpiricalGe(const Model& model, const PointSet& train,
                   const PointSet& test);
double EmpiricalGe(const InvariantModel& model, const PointSet& train,
                   const PointSet& test);

}  // namespace invargeo

#endif  // INVARGEO_CLASSIFIER_H_
