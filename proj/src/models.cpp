/*
 * Copyright 2026 The elecxai Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "elecxai/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace elecxai::models {
namespace {

using Index = Eigen::Index;

Eigen::VectorXi PresentClasses(const Eigen::VectorXi& y) {
  std::array<bool, kNumClasses> seen{};
  for (Index i = 0; i < y.size(); ++i) seen[y(i)] = true;
  std::vector<int> present;
  for (int c = 0; c < kNumClasses; ++c) {
    if (seen[c]) present.push_back(c);
  }
  return Eigen::Map<Eigen::VectorXi>(present.data(), static_cast<Index>(present.size()));
}

void CheckTrainingData(const Eigen::MatrixXd& x, const Eigen::VectorXi& y) {
  if (x.rows() == 0) throw InvalidArgument("training set is empty");
  if (x.rows() != y.size()) throw InvalidArgument("feature and label counts differ");
  for (Index i = 0; i < y.size(); ++i) {
    if (y(i) < 0 || y(i) >= kNumClasses) {
      throw InvalidArgument("label out of range: " + std::to_string(y(i)));
    }
  }
  if (PresentClasses(y).size() < 2) {
    throw InvalidArgument("training set holds a single class");
  }
  if (!x.allFinite()) throw InvalidArgument("training features must be finite");
}

TreeEnsembleModel SingleTree(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                             const ModelSpec& spec) {
  std::vector<Index> rows(static_cast<std::size_t>(x.rows()));
  for (Index i = 0; i < x.rows(); ++i) rows[static_cast<std::size_t>(i)] = i;
  Rng rng = MakeRng(spec.seed, "dt");
  TreeEnsembleModel m;
  m.n_features = static_cast<int>(x.cols());
  m.trees.push_back(FitClassificationTree(x, y, rows, {kNumClasses, 0}, rng));
  m.tree_weights = {1.0};
  m.offset = Eigen::VectorXd::Zero(kNumClasses);
  return m;
}

TreeEnsembleModel RandomForest(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                               const ModelSpec& spec) {
  if (spec.n_trees < 1) throw InvalidArgument("random forest needs at least one tree");
  const auto n = static_cast<std::uint64_t>(x.rows());
  TreeEnsembleModel m;
  m.n_features = static_cast<int>(x.cols());
  m.offset = Eigen::VectorXd::Zero(kNumClasses);
  std::vector<Index> rows(n);
  for (int t = 0; t < spec.n_trees; ++t) {
    Rng rng = MakeRng(spec.seed, "rf:tree:" + std::to_string(t));
    for (auto& r : rows) r = static_cast<Index>(UniformIndex(rng, n));
    m.trees.push_back(
        FitClassificationTree(x, y, rows, {kNumClasses, spec.max_features}, rng));
    m.tree_weights.push_back(1.0 / spec.n_trees);
  }
  return m;
}

TreeEnsembleModel GradientBoosting(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                                   const ModelSpec& spec) {
  const Index n = x.rows();
  TreeEnsembleModel m;
  m.n_features = static_cast<int>(x.cols());
  m.link = OutputLink::kSoftmax;
  m.offset = Eigen::VectorXd::Zero(kNumClasses);
  Eigen::MatrixXd margin = Eigen::MatrixXd::Zero(n, kNumClasses);
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, kNumClasses);
  for (Index i = 0; i < n; ++i) onehot(i, y(i)) = 1.0;
  const BoostingTreeParams params{spec.max_depth, spec.lambda, spec.min_child_weight};

  Eigen::VectorXd grad(n), hess(n);
  for (int round = 0; round < spec.boosting_rounds; ++round) {
    Eigen::MatrixXd prob(n, kNumClasses);
    for (Index i = 0; i < n; ++i) prob.row(i) = Softmax(margin.row(i).transpose()).transpose();
    for (int k = 0; k < kNumClasses; ++k) {
      grad = prob.col(k) - onehot.col(k);
      hess = (prob.col(k).array() * (1.0 - prob.col(k).array())).max(1e-16).matrix();
      DecisionTree tree = FitBoostingTree(x, grad, hess, params);
      for (auto& node : tree.nodes) {
        if (!node.IsLeaf()) continue;
        const double w = spec.learning_rate * node.value(0);
        node.value = Eigen::VectorXd::Zero(kNumClasses);
        node.value(k) = w;
      }
      for (Index i = 0; i < n; ++i) margin(i, k) += tree.Predict(x.row(i).transpose())(k);
      m.trees.push_back(std::move(tree));
      m.tree_weights.push_back(1.0);
    }
  }
  return m;
}

LogisticModel Logistic(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                       const ModelSpec& spec) {
  LogisticModel m;
  const Index n = x.rows();
  const Index d = x.cols();
  m.classes = PresentClasses(y);
  const Index k = m.classes.size();
  m.mean = x.colwise().mean().transpose();
  m.scale = ((x.rowwise() - m.mean.transpose()).array().square().colwise().sum() /
             static_cast<double>(n))
                .sqrt()
                .transpose();
  for (Index j = 0; j < d; ++j) {
    if (!(m.scale(j) > 1e-12)) m.scale(j) = 1.0;
  }
  // Design with a trailing intercept column.
  Eigen::MatrixXd a(n, d + 1);
  a.leftCols(d) = (x.rowwise() - m.mean.transpose()).array().rowwise() /
                  m.scale.transpose().array();
  a.col(d).setOnes();
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, k);
  for (Index i = 0; i < n; ++i) {
    for (Index c = 0; c < k; ++c) {
      if (m.classes(c) == y(i)) target(i, c) = 1.0;
    }
  }
  const double reg = 1.0 / (spec.inverse_regularization * static_cast<double>(n));
  const Eigen::MatrixXd gram = a.transpose() * a / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lipschitz = 0.5 * eig.eigenvalues().maxCoeff() + reg;
  const double step = 1.0 / lipschitz;

  auto gradient = [&](const Eigen::MatrixXd& theta) {
    Eigen::MatrixXd logits = a * theta.transpose();  // n x k
    logits.colwise() -= logits.rowwise().maxCoeff();
    Eigen::ArrayXXd e = logits.array().exp();
    e.colwise() /= e.rowwise().sum();
    Eigen::MatrixXd g = (e.matrix() - target).transpose() * a / static_cast<double>(n);
    g.leftCols(d) += reg * theta.leftCols(d);
    return g;
  };

  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(k, d + 1);
  Eigen::MatrixXd previous = theta;
  double t = 1.0;
  int it = 0;
  double gnorm = gradient(theta).norm();
  while (gnorm >= spec.gradient_tolerance && it < spec.max_iterations) {
    // Nesterov acceleration with gradient-based restart.
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const Eigen::MatrixXd look = theta + ((t - 1.0) / t_next) * (theta - previous);
    const Eigen::MatrixXd g = gradient(look);
    previous = theta;
    theta = look - step * g;
    t = t_next;
    if ((g.array() * (theta - previous).array()).sum() > 0) t = 1.0;
    ++it;
    if (it % 10 == 0) gnorm = gradient(theta).norm();
  }
  gnorm = gradient(theta).norm();
  m.weights = theta.leftCols(d);
  m.bias = theta.col(d);
  m.iterations = it;
  m.gradient_norm = gnorm;
  return m;
}

NaiveBayesModel NaiveBayes(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                           const ModelSpec& spec) {
  NaiveBayesModel m;
  m.classes = PresentClasses(y);
  const Index k = m.classes.size();
  const Index d = x.cols();
  m.log_prior.resize(k);
  m.mean = Eigen::MatrixXd::Zero(k, d);
  m.variance = Eigen::MatrixXd::Zero(k, d);
  for (Index c = 0; c < k; ++c) {
    Index count = 0;
    for (Index i = 0; i < x.rows(); ++i) {
      if (y(i) != m.classes(c)) continue;
      m.mean.row(c) += x.row(i);
      ++count;
    }
    m.mean.row(c) /= static_cast<double>(count);
    for (Index i = 0; i < x.rows(); ++i) {
      if (y(i) != m.classes(c)) continue;
      m.variance.row(c) += (x.row(i) - m.mean.row(c)).array().square().matrix();
    }
    m.variance.row(c) /= static_cast<double>(count);
    m.variance.row(c) = m.variance.row(c).cwiseMax(spec.variance_floor);
    m.log_prior(c) = std::log(static_cast<double>(count) / static_cast<double>(x.rows()));
  }
  return m;
}

Eigen::VectorXd Expand(const Eigen::VectorXi& classes, const Eigen::VectorXd& p) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kNumClasses);
  for (Index c = 0; c < classes.size(); ++c) out(classes(c)) = p(c);
  return out;
}

struct ProbaVisitor {
  const Eigen::Ref<const Eigen::VectorXd>& x;

  Eigen::VectorXd operator()(const TreeEnsembleModel& m) const { return m.PredictProba(x); }

  Eigen::VectorXd operator()(const LogisticModel& m) const {
    const Eigen::VectorXd z = ((x - m.mean).array() / m.scale.array()).matrix();
    return Expand(m.classes, Softmax(m.weights * z + m.bias));
  }

  Eigen::VectorXd operator()(const NaiveBayesModel& m) const {
    Eigen::VectorXd joint(m.classes.size());
    for (Index c = 0; c < m.classes.size(); ++c) {
      const Eigen::ArrayXd var = m.variance.row(c).transpose().array();
      const Eigen::ArrayXd diff = x.array() - m.mean.row(c).transpose().array();
      joint(c) = m.log_prior(c) -
                 0.5 * ((2.0 * std::numbers::pi * var).log() + diff.square() / var).sum();
    }
    return Expand(m.classes, Softmax(joint));
  }
};

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kDecisionTree:
      return "dt";
    case ModelKind::kRandomForest:
      return "rf";
    case ModelKind::kGradientBoostedTrees:
      return "gbt";
    case ModelKind::kLogisticRegression:
      return "log";
    case ModelKind::kGaussianNaiveBayes:
      return "bay";
  }
  return "?";
}

ModelKind ParseModelKind(std::string_view name) {
  for (auto kind : {ModelKind::kDecisionTree, ModelKind::kRandomForest,
                    ModelKind::kGradientBoostedTrees, ModelKind::kLogisticRegression,
                    ModelKind::kGaussianNaiveBayes}) {
    if (ModelKindName(kind) == name) return kind;
  }
  throw InvalidArgument("unknown model kind '" + std::string(name) + "'");
}

TrainedModel Train(const ModelSpec& spec, const Eigen::MatrixXd& x, const Eigen::VectorXi& y) {
  CheckTrainingData(x, y);
  TrainedModel out{spec, {}};
  switch (spec.kind) {
    case ModelKind::kDecisionTree:
      out.model = SingleTree(x, y, spec);
      break;
    case ModelKind::kRandomForest:
      out.model = RandomForest(x, y, spec);
      break;
    case ModelKind::kGradientBoostedTrees:
      out.model = GradientBoosting(x, y, spec);
      break;
    case ModelKind::kLogisticRegression:
      out.model = Logistic(x, y, spec);
      break;
    case ModelKind::kGaussianNaiveBayes:
      out.model = NaiveBayes(x, y, spec);
      break;
  }
  return out;
}

Eigen::VectorXd PredictProba(const Model& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return std::visit(ProbaVisitor{x}, model);
}

int Predict(const Model& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return ArgMax(PredictProba(model, x));
}

Eigen::MatrixXd PredictProbaRows(const Model& model, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), kNumClasses);
  for (Index i = 0; i < x.rows(); ++i) {
    out.row(i) = PredictProba(model, x.row(i).transpose()).transpose();
  }
  return out;
}

Eigen::VectorXi PredictRows(const Model& model, const Eigen::MatrixXd& x) {
  Eigen::VectorXi out(x.rows());
  for (Index i = 0; i < x.rows(); ++i) out(i) = Predict(model, x.row(i).transpose());
  return out;
}

Metrics ComputeMetrics(std::span<const int> predicted, std::span<const int> actual) {
  if (predicted.size() != actual.size()) {
    throw InvalidArgument("prediction and label counts differ");
  }
  Metrics m;
  m.confusion.setZero();
  m.n = static_cast<long long>(actual.size());
  long long correct = 0;
  long long abs_error = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const int p = predicted[i];
    const int a = actual[i];
    if (p < 0 || p >= kNumClasses || a < 0 || a >= kNumClasses) {
      throw InvalidArgument("class label out of range");
    }
    ++m.confusion(a, p);
    correct += p == a;
    abs_error += std::abs(p - a);
  }
  if (m.n > 0) {
    m.accuracy = static_cast<double>(correct) / static_cast<double>(m.n);
    m.mae = static_cast<double>(abs_error) / static_cast<double>(m.n);
    m.mae_ratio = m.mae / kMaxAbsoluteError;
  }
  return m;
}

DisaggregatedAccuracy ComputeDisaggregated(std::span<const int> predicted,
                                           std::span<const int> actual,
                                           std::span<const geo::Urbanicity> urbanicity) {
  if (predicted.size() != actual.size() || urbanicity.size() != actual.size()) {
    throw InvalidArgument("disaggregation inputs differ in length");
  }
  DisaggregatedAccuracy out;
  long long urban_ok = 0, rural_ok = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const bool ok = predicted[i] == actual[i];
    if (urbanicity[i] == geo::Urbanicity::kUrban) {
      ++out.n_urban;
      urban_ok += ok;
    } else {
      ++out.n_rural;
      rural_ok += ok;
    }
  }
  if (out.n_urban > 0) out.urban = static_cast<double>(urban_ok) / static_cast<double>(out.n_urban);
  if (out.n_rural > 0) out.rural = static_cast<double>(rural_ok) / static_cast<double>(out.n_rural);
  return out;
}

Metrics Evaluate(const Model& model, const dataset::FeatureTable& test) {
  const Eigen::VectorXi pred = PredictRows(model, test.features);
  std::span<const int> p(pred.data(), static_cast<std::size_t>(pred.size()));
  std::span<const int> a(test.label.data(), static_cast<std::size_t>(test.label.size()));
  Metrics m = ComputeMetrics(p, a);
  const auto dis = ComputeDisaggregated(p, a, test.urbanicity);
  m.accuracy_urban = dis.urban;
  m.accuracy_rural = dis.rural;
  m.n_urban = dis.n_urban;
  m.n_rural = dis.n_rural;
  return m;
}

DisaggregatedAccuracy EvaluateDisaggregated(const Model& model,
                                            const dataset::FeatureTable& test) {
  const Eigen::VectorXi pred = PredictRows(model, test.features);
  return ComputeDisaggregated(
      std::span<const int>(pred.data(), static_cast<std::size_t>(pred.size())),
      std::span<const int>(test.label.data(), static_cast<std::size_t>(test.label.size())),
      test.urbanicity);
}

double MajorityBaseline(const Eigen::VectorXi& labels) {
  if (labels.size() == 0) return 0.0;
  std::array<long long, kNumClasses> counts{};
  for (Index i = 0; i < labels.size(); ++i) ++counts[labels(i)];
  return static_cast<double>(*std::max_element(counts.begin(), counts.end())) /
         static_cast<double>(labels.size());
}

}  // namespace elecxai::models
