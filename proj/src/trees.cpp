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

#include "elecxai/trees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace elecxai::models {
namespace {

using Index = Eigen::Index;

// Sorted view of the rows of one node along one feature.
void SortByFeature(const Eigen::MatrixXd& x, int feature, std::vector<Index>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [&](Index a, Index b) {
    return x(a, feature) < x(b, feature);
  });
}

double Midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  // Keep lo on the left even when the midpoint rounds up to hi.
  return mid < hi ? mid : lo;
}

double GiniMass(const Eigen::VectorXd& counts, double total) {
  if (total <= 0) return 0.0;
  return total - counts.squaredNorm() / total;  // total * gini
}

struct Split {
  int feature = -1;
  double threshold = 0;
  double score = 0;
};

class ClassificationBuilder {
 public:
  ClassificationBuilder(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                        const ClassificationTreeParams& params, Rng& rng)
      : x_(x), y_(y), params_(params), rng_(rng) {}

  DecisionTree Build(std::vector<Index> rows) {
    tree_.nodes.clear();
    Grow(std::move(rows));
    return std::move(tree_);
  }

 private:
  int Grow(std::vector<Index> rows) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(params_.n_classes);
    for (Index r : rows) counts(y_(r)) += 1.0;
    const double total = static_cast<double>(rows.size());
    tree_.nodes[id].cover = total;

    const bool pure = (counts.array() > 0).count() <= 1;
    const Split split = pure ? Split{} : BestSplit(rows, counts, total);
    if (split.feature < 0) {
      tree_.nodes[id].value = counts / total;
      return id;
    }
    std::vector<Index> left, right;
    for (Index r : rows) {
      (x_(r, split.feature) <= split.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = Grow(std::move(left));
    const int r = Grow(std::move(right));
    auto& node = tree_.nodes[id];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  Split BestSplit(const std::vector<Index>& rows, const Eigen::VectorXd& counts,
                  double total) {
    const int d = static_cast<int>(x_.cols());
    std::vector<int> features(d);
    std::iota(features.begin(), features.end(), 0);
    const int wanted = params_.max_features > 0 ? std::min(params_.max_features, d) : d;
    if (wanted < d) {
      for (int i = d; i > 1; --i) {
        const auto j = UniformIndex(rng_, static_cast<std::uint64_t>(i));
        std::swap(features[i - 1], features[j]);
      }
    }
    Split best;
    double best_mass = 0;
    std::vector<Index> sorted = rows;
    Eigen::VectorXd left(params_.n_classes);
    for (int k = 0; k < d; ++k) {
      // Past the sampled subset, continue only while nothing is splittable.
      if (k >= wanted && best.feature >= 0) break;
      const int f = features[k];
      SortByFeature(x_, f, sorted);
      left.setZero();
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        left(y_(sorted[i])) += 1.0;
        const double lo = x_(sorted[i], f);
        const double hi = x_(sorted[i + 1], f);
        if (!(lo < hi)) continue;
        const double n_left = static_cast<double>(i + 1);
        const double mass = GiniMass(left, n_left) + GiniMass(counts - left, total - n_left);
        if (best.feature < 0 || mass < best_mass) {
          best = {f, Midpoint(lo, hi), 0};
          best_mass = mass;
        }
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  const Eigen::VectorXi& y_;
  const ClassificationTreeParams& params_;
  Rng& rng_;
  DecisionTree tree_;
};

class BoostingBuilder {
 public:
  BoostingBuilder(const Eigen::MatrixXd& x, const Eigen::VectorXd& g,
                  const Eigen::VectorXd& h, const BoostingTreeParams& params)
      : x_(x), g_(g), h_(h), params_(params) {}

  DecisionTree Build() {
    std::vector<Index> rows(static_cast<std::size_t>(x_.rows()));
    std::iota(rows.begin(), rows.end(), 0);
    Grow(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  double Score(double g, double h) const { return g * g / (h + params_.lambda); }

  int Grow(std::vector<Index> rows, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    double g = 0, h = 0;
    for (Index r : rows) {
      g += g_(r);
      h += h_(r);
    }
    tree_.nodes[id].cover = static_cast<double>(rows.size());
    Split split;
    if (depth < params_.max_depth) split = BestSplit(rows, g, h);
    if (split.feature < 0) {
      tree_.nodes[id].value = Eigen::VectorXd::Constant(1, -g / (h + params_.lambda));
      return id;
    }
    std::vector<Index> left, right;
    for (Index r : rows) {
      (x_(r, split.feature) <= split.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = Grow(std::move(left), depth + 1);
    const int r = Grow(std::move(right), depth + 1);
    auto& node = tree_.nodes[id];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  Split BestSplit(const std::vector<Index>& rows, double g, double h) {
    Split best;
    const double parent = Score(g, h);
    std::vector<Index> sorted = rows;
    for (int f = 0; f < static_cast<int>(x_.cols()); ++f) {
      SortByFeature(x_, f, sorted);
      double gl = 0, hl = 0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        gl += g_(sorted[i]);
        hl += h_(sorted[i]);
        const double lo = x_(sorted[i], f);
        const double hi = x_(sorted[i + 1], f);
        if (!(lo < hi)) continue;
        const double hr = h - hl;
        if (hl < params_.min_child_weight || hr < params_.min_child_weight) continue;
        const double gain = Score(gl, hl) + Score(g - gl, hr) - parent;
        if (gain > best.score) best = {f, Midpoint(lo, hi), gain};
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  const Eigen::VectorXd& g_;
  const Eigen::VectorXd& h_;
  const BoostingTreeParams& params_;
  DecisionTree tree_;
};

}  // namespace

int DecisionTree::LeafIndex(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  int id = 0;
  while (!nodes[static_cast<std::size_t>(id)].IsLeaf()) {
    const auto& n = nodes[static_cast<std::size_t>(id)];
    id = x(n.feature) <= n.threshold ? n.left : n.right;
  }
  return id;
}

int DecisionTree::Depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, depth[i]);
    if (!nodes[i].IsLeaf()) {
      depth[static_cast<std::size_t>(nodes[i].left)] = depth[i] + 1;
      depth[static_cast<std::size_t>(nodes[i].right)] = depth[i] + 1;
    }
  }
  return best;
}

void DecisionTree::Validate(int n_features, int n_outputs) const {
  if (nodes.empty()) throw InvalidArgument("tree has no nodes");
  const int n = static_cast<int>(nodes.size());
  std::vector<int> parents(nodes.size(), 0);
  for (int i = 0; i < n; ++i) {
    const auto& node = nodes[static_cast<std::size_t>(i)];
    if (!(node.cover > 0)) {
      throw InvalidArgument("tree node " + std::to_string(i) + " has non-positive cover");
    }
    if (node.IsLeaf()) {
      if (node.value.size() != n_outputs) {
        throw InvalidArgument("leaf " + std::to_string(i) + " has wrong output size");
      }
      continue;
    }
    if (node.feature >= n_features) throw InvalidArgument("split feature out of range");
    for (int c : {node.left, node.right}) {
      if (c <= i || c >= n) throw InvalidArgument("child index must follow its parent");
      ++parents[static_cast<std::size_t>(c)];
    }
  }
  for (int i = 1; i < n; ++i) {
    if (parents[static_cast<std::size_t>(i)] != 1) {
      throw InvalidArgument("tree node " + std::to_string(i) + " is not reached exactly once");
    }
  }
}

Eigen::VectorXd TreeEnsembleModel::PredictRaw(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd raw = offset;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    raw.noalias() += tree_weights[t] * trees[t].Predict(x);
  }
  return raw;
}

Eigen::VectorXd TreeEnsembleModel::PredictProba(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd raw = PredictRaw(x);
  return link == OutputLink::kSoftmax ? Softmax(raw) : raw;
}

void TreeEnsembleModel::Validate() const {
  if (trees.empty()) throw InvalidArgument("ensemble has no trees");
  if (tree_weights.size() != trees.size()) {
    throw InvalidArgument("ensemble needs one weight per tree");
  }
  if (offset.size() != n_classes) throw InvalidArgument("ensemble offset has wrong size");
  for (const auto& t : trees) t.Validate(n_features, n_classes);
}

Eigen::VectorXd Softmax(const Eigen::Ref<const Eigen::VectorXd>& z) {
  const Eigen::ArrayXd e = (z.array() - z.maxCoeff()).exp();
  return (e / e.sum()).matrix();
}

int ArgMax(const Eigen::Ref<const Eigen::VectorXd>& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

DecisionTree FitClassificationTree(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                                   std::span<const Eigen::Index> rows,
                                   const ClassificationTreeParams& params, Rng& rng) {
  if (rows.empty()) throw InvalidArgument("cannot fit a tree on zero rows");
  ClassificationBuilder builder(x, y, params, rng);
  return builder.Build(std::vector<Index>(rows.begin(), rows.end()));
}

DecisionTree FitBoostingTree(const Eigen::MatrixXd& x, const Eigen::VectorXd& grad,
                             const Eigen::VectorXd& hess,
                             const BoostingTreeParams& params) {
  if (x.rows() == 0) throw InvalidArgument("cannot fit a tree on zero rows");
  BoostingBuilder builder(x, grad, hess, params);
  return builder.Build();
}

}  // namespace elecxai::models
