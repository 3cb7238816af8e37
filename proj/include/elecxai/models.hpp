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

// Ten-class electrification classifiers and their evaluation metrics.

#ifndef ELECXAI_MODELS_HPP_
#define ELECXAI_MODELS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "elecxai/dataset.hpp"
#include "elecxai/trees.hpp"

namespace elecxai::models {

enum class ModelKind {
  kDecisionTree,
  kRandomForest,
  kGradientBoostedTrees,
  kLogisticRegression,
  kGaussianNaiveBayes,
};

// "dt", "rf", "gbt", "log", "bay"
std::string_view ModelKindName(ModelKind kind);
ModelKind ParseModelKind(std::string_view name);

// Pinned stand-ins for "default parameters".
struct ModelSpec {
  ModelKind kind = ModelKind::kRandomForest;
  std::uint64_t seed = 0;
  // Random forest.
  int n_trees = 100;
  int max_features = 4;  // floor(sqrt(18))
  // Gradient boosting.
  int boosting_rounds = 100;
  double learning_rate = 0.1;
  int max_depth = 6;
  double lambda = 1.0;
  double min_child_weight = 1.0;
  // Logistic regression: mean cross-entropy + ||W||^2 / (2 C n).
  double inverse_regularization = 1.0;
  double gradient_tolerance = 1e-6;
  int max_iterations = 200000;
  // Gaussian naive Bayes.
  double variance_floor = 1e-9;
};

// Multinomial logistic regression on standardized features.
struct LogisticModel {
  Eigen::VectorXi classes;     // labels with a modelled probability
  Eigen::MatrixXd weights;     // classes x features, standardized space
  Eigen::VectorXd bias;        // classes
  Eigen::VectorXd mean;        // features
  Eigen::VectorXd scale;       // features
  int iterations = 0;
  double gradient_norm = 0;
};

struct NaiveBayesModel {
  Eigen::VectorXi classes;
  Eigen::VectorXd log_prior;   // classes
  Eigen::MatrixXd mean;        // classes x features
  Eigen::MatrixXd variance;    // classes x features
};

using Model = std::variant<TreeEnsembleModel, LogisticModel, NaiveBayesModel>;

struct TrainedModel {
  ModelSpec spec;
  Model model;
};

TrainedModel Train(const ModelSpec& spec, const Eigen::MatrixXd& x,
                   const Eigen::VectorXi& y);
inline TrainedModel Train(const ModelSpec& spec, const dataset::FeatureTable& table) {
  return Train(spec, table.features, table.label);
}

// Probability over all kNumClasses labels.
Eigen::VectorXd PredictProba(const Model& model, const Eigen::Ref<const Eigen::VectorXd>& x);
int Predict(const Model& model, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::MatrixXd PredictProbaRows(const Model& model, const Eigen::MatrixXd& x);
Eigen::VectorXi PredictRows(const Model& model, const Eigen::MatrixXd& x);

using ConfusionMatrix = Eigen::Matrix<long long, kNumClasses, kNumClasses>;

inline constexpr double kMaxAbsoluteError = kNumClasses - 1;

struct Metrics {
  long long n = 0;
  double accuracy = 0;
  double mae = 0;
  double mae_ratio = 0;       // mae / 9
  ConfusionMatrix confusion;  // rows: true label, columns: prediction
  std::optional<double> accuracy_urban;
  std::optional<double> accuracy_rural;
  long long n_urban = 0;
  long long n_rural = 0;
};

Metrics ComputeMetrics(std::span<const int> predicted, std::span<const int> actual);

// Accuracy over the urban and rural sub-populations; empty groups are nullopt.
struct DisaggregatedAccuracy {
  std::optional<double> urban;
  std::optional<double> rural;
  long long n_urban = 0;
  long long n_rural = 0;
};
DisaggregatedAccuracy ComputeDisaggregated(std::span<const int> predicted,
                                           std::span<const int> actual,
                                           std::span<const geo::Urbanicity> urbanicity);

Metrics Evaluate(const Model& model, const dataset::FeatureTable& test);
DisaggregatedAccuracy EvaluateDisaggregated(const Model& model,
                                            const dataset::FeatureTable& test);

// Accuracy of always predicting the most frequent label of `labels`.
double MajorityBaseline(const Eigen::VectorXi& labels);

}  // namespace elecxai::models

#endif  // ELECXAI_MODELS_HPP_
