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

// Binary decision trees and additive tree ensembles.

#ifndef ELECXAI_TREES_HPP_
#define ELECXAI_TREES_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "elecxai/common.hpp"

namespace elecxai::models {

// Split nodes send x[feature] <= threshold to `left`. Leaves carry one value
// per model output. `cover` is the number of training rows that reached the
// node, counting bootstrap duplicates.
struct TreeNode {
  int feature = -1;
  double threshold = 0;
  int left = -1;
  int right = -1;
  double cover = 0;
  Eigen::VectorXd value;

  bool IsLeaf() const { return feature < 0; }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int LeafIndex(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  const Eigen::VectorXd& Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return nodes[static_cast<std::size_t>(LeafIndex(x))].value;
  }
  int Depth() const;
  // Structural checks: reachable children, positive cover, leaf sizes.
  void Validate(int n_features, int n_outputs) const;
};

enum class OutputLink { kIdentity, kSoftmax };

// raw(x) = offset + sum_t weight_t * tree_t(x); probabilities are raw under
// the identity link and softmax(raw) otherwise.
struct TreeEnsembleModel {
  std::vector<DecisionTree> trees;
  std::vector<double> tree_weights;
  Eigen::VectorXd offset;
  OutputLink link = OutputLink::kIdentity;
  int n_features = kNumFeatures;
  int n_classes = kNumClasses;

  Eigen::VectorXd PredictRaw(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd PredictProba(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  void Validate() const;
};

// Softmax with max-subtraction.
Eigen::VectorXd Softmax(const Eigen::Ref<const Eigen::VectorXd>& z);

// Index of the largest entry; ties resolve to the lowest index.
int ArgMax(const Eigen::Ref<const Eigen::VectorXd>& v);

struct ClassificationTreeParams {
  int n_classes = kNumClasses;
  // Features examined per split; 0 examines all. When none of the sampled
  // features can split, the remaining ones are tried before giving up.
  int max_features = 0;
};

// CART with Gini impurity grown until every leaf is pure or unsplittable.
// `rows` may contain duplicates (bootstrap samples).
DecisionTree FitClassificationTree(const Eigen::MatrixXd& x,
                                   const Eigen::VectorXi& y,
                                   std::span<const Eigen::Index> rows,
                                   const ClassificationTreeParams& params, Rng& rng);

struct BoostingTreeParams {
  int max_depth = 6;
  double lambda = 1.0;
  double min_child_weight = 1.0;
};

// Second-order regression tree; leaf weight is -G / (H + lambda), unscaled.
DecisionTree FitBoostingTree(const Eigen::MatrixXd& x, const Eigen::VectorXd& grad,
                             const Eigen::VectorXd& hess,
                             const BoostingTreeParams& params);

}  // namespace elecxai::models

#endif  // ELECXAI_TREES_HPP_
