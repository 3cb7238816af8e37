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

// Local explanations: a LIME-style weighted linear surrogate, path-dependent
// TreeSHAP, an exact Shapley oracle for trees, and per-class aggregation.

#ifndef ELECXAI_EXPLAIN_HPP_
#define ELECXAI_EXPLAIN_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "elecxai/geo.hpp"
#include "elecxai/models.hpp"
#include "elecxai/ridge.hpp"

namespace elecxai::explain {

enum class Method { kLime, kShap };
std::string_view MethodName(Method m);  // "LIME" / "SHAP"
Method ParseMethod(std::string_view name);

// SHAP values of softmax-linked ensembles live in margin space.
enum class OutputSpace { kProbability, kMargin };

struct LimeConfig {
  int n_samples = 5000;
  double kernel_width = 0.75 * std::sqrt(static_cast<double>(kNumFeatures));
  int top_d = 5;
  double ridge_lambda = 1.0;
  std::uint64_t seed = 0;

  void Validate(int n_features) const;
};

struct Explanation {
  std::string tower_id;
  Method method = Method::kShap;
  OutputSpace output = OutputSpace::kProbability;
  int target_class = 0;
  int predicted_class = 0;
  geo::Urbanicity urbanicity = geo::Urbanicity::kRural;
  // Importance (LIME) or contribution (SHAP) for target_class.
  Eigen::VectorXd relevance;
  // SHAP only: expected output for target_class.
  std::optional<double> base_value;
  // SHAP only: features x classes contributions and per-class base values.
  Eigen::MatrixXd class_relevance;
  Eigen::VectorXd class_base;
};

// Per-feature mean and standard deviation of the explanation training set.
struct Background {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // floored at kMinStddev
};
inline constexpr double kMinStddev = 1e-9;
Background SummarizeBackground(const Eigen::MatrixXd& rows);

// Everything the surrogate was fitted on, for auditing against a closed form.
struct LimeTrace {
  Eigen::MatrixXd samples;   // raw perturbed rows
  Eigen::MatrixXd design;    // (samples - mean) / stddev
  Eigen::VectorXd weights;   // exp(-d^2 / width^2)
  Eigen::VectorXd targets;   // model probability of the explained class
  RidgeFit<double> fit;      // before top-d selection
};

// Seed used for one instance: independent of evaluation order.
std::uint64_t InstanceSeed(std::uint64_t seed, std::string_view tower_id);

Explanation LimeExplain(const models::Model& model, const Eigen::VectorXd& x,
                        const Background& background, const LimeConfig& config,
                        std::string_view tower_id = "", LimeTrace* trace = nullptr);

// Contributions of every feature to every ensemble output (features x
// outputs), summed over trees with their weights.
Eigen::MatrixXd TreeShapValues(const models::TreeEnsembleModel& model,
                               const Eigen::VectorXd& x);

// offset + sum_t weight_t * cover-weighted mean leaf value.
Eigen::VectorXd ExpectedOutput(const models::TreeEnsembleModel& model);

// Throws InvalidArgument for models that are not tree ensembles.
Explanation TreeShapExplain(const models::Model& model, const Eigen::VectorXd& x,
                            std::optional<int> target_class = std::nullopt,
                            std::string_view tower_id = "");

// Exact Shapley values (features x outputs) by enumerating all 2^M feature
// coalitions under the same cover-weighted value function. M <= 12.
inline constexpr int kMaxBruteForceFeatures = 12;
Eigen::MatrixXd BruteForceShapley(const models::TreeEnsembleModel& model,
                                  const Eigen::VectorXd& x);

enum class ClassMode { kPredictedOnly, kAllClasses };
enum class PopulationFilter { kAll, kUrban, kRural };
std::string_view ClassModeName(ClassMode m);
std::string_view PopulationFilterName(PopulationFilter f);

// Mean relevance per (feature, class). Columns nobody contributed to hold
// zero and are flagged by a zero count.
struct AggregateMatrix {
  Method method = Method::kShap;
  ClassMode class_mode = ClassMode::kPredictedOnly;
  PopulationFilter population = PopulationFilter::kAll;
  Eigen::MatrixXd mean;          // kNumFeatures x kNumClasses
  Eigen::VectorXi counts;        // instances per class column

  bool IsEmpty(int klass) const { return counts(klass) == 0; }
};

AggregateMatrix Aggregate(std::span<const Explanation> explanations, ClassMode mode,
                          PopulationFilter filter);

bool Matches(PopulationFilter filter, geo::Urbanicity u);

// One JSON object per line.
std::string FormatExplanationsJsonl(std::span<const Explanation> explanations);
std::vector<Explanation> ParseExplanationsJsonl(std::string_view text);

// Rows are features in schema order, columns classes 0-9; empty columns "NA".
std::string FormatAggregateCsv(const AggregateMatrix& aggregate);

}  // namespace elecxai::explain

#endif  // ELECXAI_EXPLAIN_HPP_
