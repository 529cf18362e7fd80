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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace invargeo {
namespace {

Eigen::Map<const Eigen::VectorXd> AsVector(const Signal& x) {
  return {x.values().data(), static_cast<Eigen::Index>(x.dim())};
}

void CheckInput(const Model& model, const Signal& x) {
  if (static_cast<int>(x.dim()) != model.dim()) {
    throw std::invalid_argument("model/input dimension mismatch");
  }
}

void CheckLabeled(const PointSet& data, int n_classes, const char* what) {
  if (data.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty data");
  }
  for (int y : data.labels()) {
    if (y < 0 || y >= n_classes) {
      throw std::invalid_argument(std::string(what) + ": label out of range");
    }
  }
}

// Columns are the samples.
Eigen::MatrixXd SampleMatrix(const PointSet& data) {
  Eigen::MatrixXd x(data.dim(), data.size());
  for (std::size_t i = 0; i < data.size(); ++i) x.col(i) = AsVector(data[i]);
  return x;
}

// Columns x - t(x) for every transform.
Eigen::MatrixXd TransformDifferences(const TransformSet& ts, const Signal& x) {
  Eigen::MatrixXd d(x.dim(), ts.size());
  std::vector<double> image(x.dim());
  for (std::size_t t = 0; t < ts.size(); ++t) {
    ts[t].ApplyTo(x.values(), image);
    for (std::size_t k = 0; k < x.dim(); ++k) d(k, t) = x[k] - image[k];
  }
  return d;
}

// Mean cross-entropy over the columns of `x` and its gradient with respect
// to the scores (softmax minus one-hot, divided by the batch size).
double CrossEntropy(const Model& model, const Eigen::MatrixXd& x,
                    const std::vector<int>& labels, Eigen::MatrixXd* residual) {
  const Eigen::MatrixXd scores = (model.weights * x).colwise() + model.bias;
  const double inv_b = 1.0 / static_cast<double>(x.cols());
  residual->resize(scores.rows(), scores.cols());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < scores.cols(); ++i) {
    const double top = scores.col(i).maxCoeff();
    const Eigen::VectorXd e = (scores.col(i).array() - top).exp();
    const double z = e.sum();
    loss += top + std::log(z) - scores(labels[i], i);
    residual->col(i) = e / z;
    (*residual)(labels[i], i) -= 1.0;
  }
  *residual *= inv_b;
  return loss * inv_b;
}

// Mean that depends only on the multiset of values and returns a shared
// value unchanged, so orbit-invariant inputs give bit-identical results.
double CanonicalMean(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) return values.front();
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double LargestEigenvalue(const Eigen::MatrixXd& symmetric) {
  if (symmetric.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric,
                                                        Eigen::EigenvaluesOnly);
  return std::max(0.0, solver.eigenvalues().maxCoeff());
}

}  // namespace

Model::Model(Eigen::MatrixXd w, Eigen::VectorXd b)
    : weights(std::move(w)), bias(std::move(b)) {
  if (weights.rows() != bias.size()) {
    throw std::invalid_argument("Model: weights rows != bias length");
  }
  if (!weights.allFinite() || !bias.allFinite()) {
    throw std::invalid_argument("Model: non-finite parameters");
  }
}

Model Model::Zero(int n_classes, int dim) {
  return Model(Eigen::MatrixXd::Zero(n_classes, dim),
               Eigen::VectorXd::Zero(n_classes));
}

Eigen::VectorXd Forward(const Model& model, const Signal& x) {
  CheckInput(model, x);
  return model.weights * AsVector(x) + model.bias;
}

int ArgMax(const Eigen::VectorXd& scores) {
  int best = 0;
  for (int i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) best = i;
  }
  return best;
}

int Predict(const Model& model, const Signal& x) {
  return ArgMax(Forward(model, x));
}

double ScoreMargin(const Eigen::VectorXd& scores, int y) {
  if (scores.size() < 2) {
    throw std::invalid_argument("ScoreMargin: need at least two classes");
  }
  if (y < 0 || y >= scores.size()) {
    throw std::invalid_argument("ScoreMargin: label out of range");
  }
  double gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < scores.size(); ++j) {
    if (j != y) gap = std::min(gap, scores(y) - scores(j));
  }
  return std::numbers::sqrt2 * gap;
}

double ScoreMargin(const Model& model, const LabeledSample& sample) {
  return ScoreMargin(Forward(model, sample.x), sample.y);
}

PowerIterationResult PowerIteration(const Eigen::MatrixXd& w,
                                    const PowerIterationOptions& options) {
  PowerIterationResult result;
  if (w.size() == 0) {
    result.converged = true;
    return result;
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(w.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
  v.normalize();
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd av = w.transpose() * (w * v);
    const double lambda = v.dot(av);
    result.iterations = it;
    if (lambda <= 0.0) {
      // v is in the null space; only possible for W == 0 from a generic
      // start.
      if (av.norm() == 0.0 && w.isZero(0.0)) {
        result.converged = true;
        return result;
      }
    }
    result.sigma = std::sqrt(std::max(lambda, 0.0));
    if ((av - lambda * v).norm() <= options.tolerance * lambda) {
      result.converged = true;
      return result;
    }
    v = av.normalized();
  }
  return result;
}

double SpectralNorm(const Model& model) {
  PowerIterationOptions options;
  options.tolerance = 1e-10;
  const PowerIterationResult result = PowerIteration(model.weights, options);
  if (!result.converged) {
    throw std::runtime_error("SpectralNorm: power iteration did not converge");
  }
  return result.sigma;
}

Model Stabilize(const Model& model) {
  const double sigma = SpectralNorm(model);
  const double scale = std::max(1.0, sigma);
  Model out(model.weights / scale, model.bias / scale);
  out.spectral_norm_cache = sigma / scale;
  return out;
}

double InvariancePenalty(const Model& model, const Signal& x,
                         const TransformSet& ts) {
  CheckInput(model, x);
  if (ts.dim() != x.dim()) {
    throw std::invalid_argument("InvariancePenalty: dimension mismatch");
  }
  return (model.weights * TransformDifferences(ts, x)).squaredNorm();
}

double InvariancePenalty(const InvariantModel& model, const Signal& x,
                         const TransformSet& ts) {
  if (ts.dim() != x.dim()) {
    throw std::invalid_argument("InvariancePenalty: dimension mismatch");
  }
  const Eigen::VectorXd center = model.Forward(x);
  double sum = 0.0;
  for (const Transform& t : ts.elements()) {
    sum += (center - model.Forward(t.Apply(x))).squaredNorm();
  }
  return sum;
}

InvariantModel::InvariantModel(Model base, TransformSet group)
    : base_(std::move(base)), group_(std::move(group)) {
  if (static_cast<int>(group_.dim()) != base_.dim()) {
    throw std::invalid_argument("InvariantModel: dimension mismatch");
  }
  if (!IsGroup(group_)) {
    throw std::invalid_argument(
        "InvariantModel: orbit averaging needs a group");
  }
}

Eigen::VectorXd InvariantModel::Forward(const Signal& x) const {
  CheckInput(base_, x);
  const Eigen::Index n_classes = base_.n_classes();
  Eigen::MatrixXd scores(n_classes, group_.size());
  std::vector<double> image(x.dim());
  for (std::size_t t = 0; t < group_.size(); ++t) {
    group_[t].ApplyTo(x.values(), image);
    scores.col(t) = base_.weights * Eigen::Map<const Eigen::VectorXd>(
                                        image.data(), image.size()) +
                    base_.bias;
  }
  Eigen::VectorXd out(n_classes);
  std::vector<double> row(group_.size());
  for (Eigen::Index c = 0; c < n_classes; ++c) {
    for (std::size_t t = 0; t < row.size(); ++t) row[t] = scores(c, t);
    out(c) = CanonicalMean(row);
  }
  return out;
}

int InvariantModel::Predict(const Signal& x) const {
  return ArgMax(Forward(x));
}

InvariantModel OrbitAverage(const Model& model, const TransformSet& group) {
  return InvariantModel(model, group);
}

Signal OrbitMean(const TransformSet& ts, const Signal& x) {
  if (ts.dim() != x.dim()) {
    throw std::invalid_argument("OrbitMean: dimension mismatch");
  }
  std::vector<std::vector<double>> images(ts.size(),
                                          std::vector<double>(x.dim()));
  for (std::size_t t = 0; t < ts.size(); ++t) {
    ts[t].ApplyTo(x.values(), images[t]);
  }
  std::vector<double> mean(x.dim());
  std::vector<double> column(ts.size());
  for (std::size_t k = 0; k < x.dim(); ++k) {
    for (std::size_t t = 0; t < ts.size(); ++t) column[t] = images[t][k];
    mean[k] = CanonicalMean(column);
  }
  return Signal(std::move(mean));
}

void TrainConfig::Validate() const {
  if (epochs < 0) throw std::invalid_argument("TrainConfig: epochs < 0");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
  }
  if (!(weight_decay >= 0.0) || !(invariance_weight >= 0.0)) {
    throw std::invalid_argument("TrainConfig: negative regularization weight");
  }
  if (batch_size < 0)
    throw std::invalid_argument("TrainConfig: batch_size < 0");
}

Objective EvaluateObjective(const Model& model, const PointSet& batch,
                            const TransformSet* ts, double invariance_weight,
                            double weight_decay) {
  CheckLabeled(batch, model.n_classes(), "EvaluateObjective");
  if (static_cast<int>(batch.dim()) != model.dim()) {
    throw std::invalid_argument("EvaluateObjective: dimension mismatch");
  }
  const Eigen::MatrixXd x = SampleMatrix(batch);
  Eigen::MatrixXd residual;
  Objective obj;
  obj.value = CrossEntropy(model, x, batch.labels(), &residual);
  obj.grad_weights = residual * x.transpose();
  obj.grad_bias = residual.rowwise().sum();

  if (invariance_weight > 0.0) {
    if (ts == nullptr) {
      throw std::invalid_argument(
          "EvaluateObjective: penalty needs transforms");
    }
    const double scale = invariance_weight / static_cast<double>(batch.size());
    for (const Signal& s : batch.points()) {
      const Eigen::MatrixXd d = TransformDifferences(*ts, s);
      const Eigen::MatrixXd wd = model.weights * d;
      obj.value += scale * wd.squaredNorm();
      obj.grad_weights += 2.0 * scale * wd * d.transpose();
    }
  }
  obj.value += weight_decay * model.weights.squaredNorm();
  obj.grad_weights += 2.0 * weight_decay * model.weights;
  return obj;
}

Model InitialModel(int n_classes, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.01);
  Eigen::MatrixXd w(n_classes, dim);
  for (int r = 0; r < n_classes; ++r) {
    for (int c = 0; c < dim; ++c) w(r, c) = normal(rng);
  }
  return Model(std::move(w), Eigen::VectorXd::Zero(n_classes));
}

Model Train(const PointSet& data, int n_classes, const TrainConfig& cfg,
            const TransformSet* ts) {
  cfg.Validate();
  if (n_classes < 2) throw std::invalid_argument("Train: need >= 2 classes");
  CheckLabeled(data, n_classes, "Train");
  const bool penalize = cfg.invariance_weight > 0.0;
  if (penalize && (ts == nullptr || ts->dim() != data.dim())) {
    throw std::invalid_argument(
        "Train: invariance penalty needs transforms "
        "matching the data dimension");
  }
  const int dim = static_cast<int>(data.dim());
  const Eigen::Index m = static_cast<Eigen::Index>(data.size());
  Model model = InitialModel(n_classes, dim, cfg.seed);
  if (cfg.epochs == 0) return Stabilize(model);

  const Eigen::MatrixXd x = SampleMatrix(data);
  const std::vector<int>& labels = data.labels();

  // Second moment of the penalty differences, mean over samples.
  Eigen::MatrixXd penalty_moment;
  if (penalize) {
    penalty_moment = Eigen::MatrixXd::Zero(dim, dim);
    for (const Signal& s : data.points()) {
      const Eigen::MatrixXd d = TransformDifferences(*ts, s);
      penalty_moment.noalias() += d * d.transpose();
    }
    penalty_moment /= static_cast<double>(m);
  }

  // Softmax cross-entropy has score-Hessian eigenvalues <= 1/2, so with
  // augmented inputs [x; 1] the objective is L-smooth for this L.
  Eigen::MatrixXd augmented(dim + 1, m);
  augmented.topRows(dim) = x;
  augmented.bottomRows(1).setOnes();
  double smoothness =
      0.5 * LargestEigenvalue(augmented * augmented.transpose() /
                              static_cast<double>(m)) +
      2.0 * cfg.weight_decay;
  if (penalize) {
    smoothness +=
        2.0 * cfg.invariance_weight * LargestEigenvalue(penalty_moment);
  }
  const double step = smoothness > 0.0
                          ? std::min(cfg.learning_rate, 1.0 / smoothness)
                          : cfg.learning_rate;

  const bool full_batch = cfg.batch_size == 0 || cfg.batch_size >= m;
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Eigen::Index> order(m);
  std::iota(order.begin(), order.end(), 0);

  Eigen::MatrixXd residual;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (full_batch) {
      CrossEntropy(model, x, labels, &residual);
      Eigen::MatrixXd grad_w =
          residual * x.transpose() + 2.0 * cfg.weight_decay * model.weights;
      if (penalize) {
        grad_w += 2.0 * cfg.invariance_weight * model.weights * penalty_moment;
      }
      model.weights -= step * grad_w;
      model.bias -= step * residual.rowwise().sum();
      continue;
    }
    std::shuffle(order.begin(), order.end(), rng);
    for (Eigen::Index start = 0; start < m; start += cfg.batch_size) {
      const Eigen::Index end =
          std::min<Eigen::Index>(m, start + cfg.batch_size);
      Eigen::MatrixXd xb(dim, end - start);
      std::vector<int> yb;
      for (Eigen::Index k = start; k < end; ++k) {
        xb.col(k - start) = x.col(order[k]);
        yb.push_back(labels[order[k]]);
      }
      CrossEntropy(model, xb, yb, &residual);
      Eigen::MatrixXd grad_w =
          residual * xb.transpose() + 2.0 * cfg.weight_decay * model.weights;
      if (penalize) {
        const double scale =
            2.0 * cfg.invariance_weight / static_cast<double>(end - start);
        for (Eigen::Index k = start; k < end; ++k) {
          const Eigen::MatrixXd d = TransformDifferences(*ts, data[order[k]]);
          grad_w += scale * (model.weights * d) * d.transpose();
        }
      }
      model.weights -= step * grad_w;
      model.bias -= step * residual.rowwise().sum();
    }
  }
  if (!model.weights.allFinite() || !model.bias.allFinite()) {
    throw std::runtime_error("Train: parameters diverged");
  }
  return Stabilize(model);
}

InvariantModel TrainInvariant(const PointSet& data, int n_classes,
                              const TrainConfig& cfg,
                              const TransformSet& group) {
  if (!IsGroup(group)) {
    throw std::invalid_argument(
        "TrainInvariant: orbit averaging needs a group");
  }
  std::vector<Signal> averaged;
  averaged.reserve(data.size());
  for (const Signal& s : data.points()) averaged.push_back(OrbitMean(group, s));
  const PointSet projected(std::move(averaged), data.labels());
  return InvariantModel(Train(projected, n_classes, cfg), group);
}

double GradientCheck(const Model& model, const PointSet& batch,
                     const TransformSet* ts, double invariance_weight, double h,
                     double weight_decay) {
  if (!(h > 0.0)) throw std::invalid_argument("GradientCheck: h must be > 0");
  const Objective analytic =
      EvaluateObjective(model, batch, ts, invariance_weight, weight_decay);
  auto value_at = [&](const Model& probe) {
    return EvaluateObjective(probe, batch, ts, invariance_weight, weight_decay)
        .value;
  };
  auto rel_error = [](double a, double n) {
    const double denom = std::max({std::abs(a), std::abs(n), 1e-8});
    return std::abs(a - n) / denom;
  };
  double worst = 0.0;
  Model probe = model;
  for (Eigen::Index r = 0; r < model.weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.weights.cols(); ++c) {
      const double saved = probe.weights(r, c);
      probe.weights(r, c) = saved + h;
      const double up = value_at(probe);
      probe.weights(r, c) = saved - h;
      const double down = value_at(probe);
      probe.weights(r, c) = saved;
      worst = std::max(worst, rel_error(analytic.grad_weights(r, c),
                                        (up - down) / (2.0 * h)));
    }
  }
  for (Eigen::Index r = 0; r < model.bias.size(); ++r) {
    const double saved = probe.bias(r);
    probe.bias(r) = saved + h;
    const double up = value_at(probe);
    probe.bias(r) = saved - h;
    const double down = value_at(probe);
    probe.bias(r) = saved;
    worst = std::max(worst,
                     rel_error(analytic.grad_bias(r), (up - down) / (2.0 * h)));
  }
  return worst;
}

double ZeroOneError(const Model& model, const PointSet& data) {
  if (data.empty()) throw std::invalid_argument("ZeroOneError: empty data");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (Predict(model, data[i]) != data.label(i)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

double ZeroOneError(const InvariantModel& model, const PointSet& data) {
  if (data.empty()) throw std::invalid_argument("ZeroOneError: empty data");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (model.Predict(data[i]) != data.label(i)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

double EmpiricalGe(const Model& model, const PointSet& train,
                   const PointSet& test) {
  return std::abs(ZeroOneError(model, train) - ZeroOneError(model, test));
}

double EmpiricalGe(const InvariantModel& model, const PointSet& train,
                   const PointSet& test) {
  return std::abs(ZeroOneError(model, train) - ZeroOneError(model, test));
}

}  // namespace invargeo
