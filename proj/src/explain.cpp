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

#include "elecxai/explain.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <variant>

#include <json.hpp>

#include "elecxai/csv.hpp"

namespace elecxai::explain {
namespace {

using Index = Eigen::Index;
using models::DecisionTree;
using models::TreeEnsembleModel;

struct PathElement {
  int feature = -1;
  double zero_fraction = 0;
  double one_fraction = 0;
  double weight = 0;
};

using Path = std::vector<PathElement>;

void ExtendPath(Path& path, int depth, double zero_fraction, double one_fraction,
                int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].weight += one_fraction * path[i].weight * (i + 1) / (depth + 1.0);
    path[i].weight = zero_fraction * path[i].weight * (depth - i) / (depth + 1.0);
  }
}

void UnwindPath(Path& path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].weight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0) {
      const double tmp = path[i].weight;
      path[i].weight = next * (depth + 1.0) / ((i + 1.0) * one);
      next = tmp - path[i].weight * zero * (depth - i) / (depth + 1.0);
    } else {
      path[i].weight = path[i].weight * (depth + 1.0) / (zero * (depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

// Total weight of the path with element `index` removed.
double UnwoundPathSum(const Path& path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].weight;
  double total = 0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0) {
      const double tmp = next * (depth + 1.0) / ((i + 1.0) * one);
      total += tmp;
      next = path[i].weight - tmp * zero * ((depth - i) / (depth + 1.0));
    } else {
      total += (path[i].weight / zero) / ((depth - i) / (depth + 1.0));
    }
  }
  return total;
}

void ShapRecurse(const DecisionTree& tree, const Eigen::VectorXd& x, Eigen::MatrixXd& phi,
                 int node_id, Path path, int depth, double zero_fraction,
                 double one_fraction, int feature) {
  ExtendPath(path, depth, zero_fraction, one_fraction, feature);
  const auto& node = tree.nodes[static_cast<std::size_t>(node_id)];
  if (node.IsLeaf()) {
    for (int i = 1; i <= depth; ++i) {
      const double w = UnwoundPathSum(path, depth, i);
      const auto& el = path[i];
      phi.row(el.feature) += (w * (el.one_fraction - el.zero_fraction)) * node.value.transpose();
    }
    return;
  }
  const bool go_left = x(node.feature) <= node.threshold;
  const int hot = go_left ? node.left : node.right;
  const int cold = go_left ? node.right : node.left;
  const double hot_cover = tree.nodes[static_cast<std::size_t>(hot)].cover;
  const double cold_cover = tree.nodes[static_cast<std::size_t>(cold)].cover;

  double incoming_zero = 1.0;
  double incoming_one = 1.0;
  int k = 1;
  for (; k <= depth; ++k) {
    if (path[k].feature == node.feature) break;
  }
  if (k <= depth) {
    incoming_zero = path[k].zero_fraction;
    incoming_one = path[k].one_fraction;
    UnwindPath(path, depth, k);
    --depth;
  }
  ShapRecurse(tree, x, phi, hot, path, depth + 1, incoming_zero * hot_cover / node.cover,
              incoming_one, node.feature);
  ShapRecurse(tree, x, phi, cold, path, depth + 1, incoming_zero * cold_cover / node.cover,
              0.0, node.feature);
}

Eigen::VectorXd NodeExpectation(const DecisionTree& tree, int node_id) {
  const auto& node = tree.nodes[static_cast<std::size_t>(node_id)];
  if (node.IsLeaf()) return node.value;
  const double lc = tree.nodes[static_cast<std::size_t>(node.left)].cover;
  const double rc = tree.nodes[static_cast<std::size_t>(node.right)].cover;
  return (lc * NodeExpectation(tree, node.left) + rc * NodeExpectation(tree, node.right)) /
         node.cover;
}

// Value of coalition `mask`: features in the mask follow x, the others
// average their children by cover.
Eigen::VectorXd CoalitionValue(const DecisionTree& tree, int node_id,
                               const Eigen::VectorXd& x, unsigned mask) {
  const auto& node = tree.nodes[static_cast<std::size_t>(node_id)];
  if (node.IsLeaf()) return node.value;
  if (mask & (1u << node.feature)) {
    return CoalitionValue(tree, x(node.feature) <= node.threshold ? node.left : node.right, x,
                          mask);
  }
  const double lc = tree.nodes[static_cast<std::size_t>(node.left)].cover;
  const double rc = tree.nodes[static_cast<std::size_t>(node.right)].cover;
  return (lc * CoalitionValue(tree, node.left, x, mask) +
          rc * CoalitionValue(tree, node.right, x, mask)) /
         node.cover;
}

const TreeEnsembleModel& RequireEnsemble(const models::Model& model) {
  const auto* e = std::get_if<TreeEnsembleModel>(&model);
  if (e == nullptr) {
    throw InvalidArgument(
        "TreeSHAP needs a tree ensemble; use LimeExplain for other model families");
  }
  return *e;
}

std::vector<double> ToStd(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd FromStd(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

}  // namespace

std::string_view MethodName(Method m) { return m == Method::kLime ? "LIME" : "SHAP"; }

Method ParseMethod(std::string_view name) {
  if (name == "LIME" || name == "lime") return Method::kLime;
  if (name == "SHAP" || name == "shap") return Method::kShap;
  throw InvalidArgument("unknown explanation method '" + std::string(name) + "'");
}

void LimeConfig::Validate(int n_features) const {
  if (n_samples < 2) throw InvalidArgument("LIME needs at least 2 samples");
  if (!(kernel_width > 0)) throw InvalidArgument("LIME kernel width must be positive");
  if (top_d < 1 || top_d > n_features) throw InvalidArgument("LIME top_d out of range");
  if (!(ridge_lambda > 0)) throw InvalidArgument("LIME ridge penalty must be positive");
}

Background SummarizeBackground(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw InvalidArgument("LIME background set is empty");
  Background b;
  b.mean = rows.colwise().mean().transpose();
  b.stddev = ((rows.rowwise() - b.mean.transpose()).array().square().colwise().sum() /
              static_cast<double>(rows.rows()))
                 .sqrt()
                 .transpose()
                 .cwiseMax(kMinStddev);
  return b;
}

std::uint64_t InstanceSeed(std::uint64_t seed, std::string_view tower_id) {
  return DeriveSeed(seed, "lime:" + std::string(tower_id));
}

Explanation LimeExplain(const models::Model& model, const Eigen::VectorXd& x,
                        const Background& background, const LimeConfig& config,
                        std::string_view tower_id, LimeTrace* trace) {
  const auto d = static_cast<int>(x.size());
  config.Validate(d);
  if (background.mean.size() != d || background.stddev.size() != d) {
    throw InvalidArgument("background does not match the instance width");
  }
  const Eigen::VectorXd proba = models::PredictProba(model, x);
  const int predicted = models::ArgMax(proba);

  Rng rng(InstanceSeed(config.seed, tower_id));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index n = config.n_samples;
  Eigen::MatrixXd samples(n, d);
  Eigen::VectorXd weights(n);
  Eigen::VectorXd targets(n);
  const double width2 = config.kernel_width * config.kernel_width;
  for (Index s = 0; s < n; ++s) {
    Eigen::VectorXd step(d);
    for (int j = 0; j < d; ++j) step(j) = gauss(rng);
    samples.row(s) = (x + step.cwiseProduct(background.stddev)).transpose();
    weights(s) = std::exp(-step.squaredNorm() / width2);
  }
  targets = models::PredictProbaRows(model, samples).col(predicted);
  const Eigen::MatrixXd design =
      (samples.rowwise() - background.mean.transpose()).array().rowwise() /
      background.stddev.transpose().array();
  const auto fit = WeightedRidge(design, targets, weights, config.ridge_lambda);

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(fit.coefficients(a)) > std::abs(fit.coefficients(b));
  });
  Explanation e;
  e.tower_id = std::string(tower_id);
  e.method = Method::kLime;
  e.target_class = predicted;
  e.predicted_class = predicted;
  e.relevance = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < config.top_d; ++k) {
    e.relevance(order[static_cast<std::size_t>(k)]) = fit.coefficients(order[static_cast<std::size_t>(k)]);
  }
  if (trace != nullptr) {
    trace->samples = std::move(samples);
    trace->design = design;
    trace->weights = std::move(weights);
    trace->targets = std::move(targets);
    trace->fit = fit;
  }
  return e;
}

Eigen::MatrixXd TreeShapValues(const TreeEnsembleModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.n_features) {
    throw InvalidArgument("instance width does not match the model");
  }
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(model.n_features, model.n_classes);
  Eigen::MatrixXd phi(model.n_features, model.n_classes);
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    const auto& tree = model.trees[t];
    phi.setZero();
    Path path(static_cast<std::size_t>(tree.Depth() + 2));
    ShapRecurse(tree, x, phi, 0, std::move(path), 0, 1.0, 1.0, -1);
    total += model.tree_weights[t] * phi;
  }
  return total;
}

Eigen::VectorXd ExpectedOutput(const TreeEnsembleModel& model) {
  Eigen::VectorXd base = model.offset;
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    base += model.tree_weights[t] * NodeExpectation(model.trees[t], 0);
  }
  return base;
}

Explanation TreeShapExplain(const models::Model& model, const Eigen::VectorXd& x,
                            std::optional<int> target_class, std::string_view tower_id) {
  const auto& ensemble = RequireEnsemble(model);
  Explanation e;
  e.tower_id = std::string(tower_id);
  e.method = Method::kShap;
  e.output = ensemble.link == models::OutputLink::kSoftmax ? OutputSpace::kMargin
                                                           : OutputSpace::kProbability;
  e.predicted_class = models::ArgMax(ensemble.PredictProba(x));
  e.target_class = target_class.value_or(e.predicted_class);
  if (e.target_class < 0 || e.target_class >= ensemble.n_classes) {
    throw InvalidArgument("target class out of range");
  }
  e.class_relevance = TreeShapValues(ensemble, x);
  e.class_base = ExpectedOutput(ensemble);
  e.relevance = e.class_relevance.col(e.target_class);
  e.base_value = e.class_base(e.target_class);
  return e;
}

Eigen::MatrixXd BruteForceShapley(const TreeEnsembleModel& model, const Eigen::VectorXd& x) {
  const int m = model.n_features;
  if (m > kMaxBruteForceFeatures) {
    throw InvalidArgument("brute-force Shapley is limited to " +
                          std::to_string(kMaxBruteForceFeatures) + " features");
  }
  if (x.size() != m) throw InvalidArgument("instance width does not match the model");
  const unsigned n_masks = 1u << m;
  std::vector<Eigen::VectorXd> value(n_masks);
  for (unsigned mask = 0; mask < n_masks; ++mask) {
    Eigen::VectorXd v = model.offset;
    for (std::size_t t = 0; t < model.trees.size(); ++t) {
      v += model.tree_weights[t] * CoalitionValue(model.trees[t], 0, x, mask);
    }
    value[mask] = std::move(v);
  }
  // weight[s] = s! (m - s - 1)! / m!
  std::vector<double> weight(static_cast<std::size_t>(m), 0.0);
  for (int s = 0; s < m; ++s) {
    double w = 1.0 / m;
    // 1 / (m * C(m-1, s))
    for (int k = 1; k <= s; ++k) w *= static_cast<double>(k) / (m - k);
    weight[static_cast<std::size_t>(s)] = w;
  }
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(m, model.n_classes);
  for (int i = 0; i < m; ++i) {
    const unsigned bit = 1u << i;
    for (unsigned mask = 0; mask < n_masks; ++mask) {
      if (mask & bit) continue;
      const int size = std::popcount(mask);
      phi.row(i) += weight[static_cast<std::size_t>(size)] *
                    (value[mask | bit] - value[mask]).transpose();
    }
  }
  return phi;
}

std::string_view ClassModeName(ClassMode m) {
  return m == ClassMode::kPredictedOnly ? "predicted" : "all_classes";
}

std::string_view PopulationFilterName(PopulationFilter f) {
  switch (f) {
    case PopulationFilter::kAll:
      return "all";
    case PopulationFilter::kUrban:
      return "urban";
    case PopulationFilter::kRural:
      return "rural";
  }
  return "?";
}

bool Matches(PopulationFilter filter, geo::Urbanicity u) {
  switch (filter) {
    case PopulationFilter::kAll:
      return true;
    case PopulationFilter::kUrban:
      return u == geo::Urbanicity::kUrban;
    case PopulationFilter::kRural:
      return u == geo::Urbanicity::kRural;
  }
  return false;
}

AggregateMatrix Aggregate(std::span<const Explanation> explanations, ClassMode mode,
                          PopulationFilter filter) {
  AggregateMatrix agg;
  agg.class_mode = mode;
  agg.population = filter;
  agg.mean = Eigen::MatrixXd::Zero(kNumFeatures, kNumClasses);
  agg.counts = Eigen::VectorXi::Zero(kNumClasses);
  if (!explanations.empty()) agg.method = explanations.front().method;
  for (const auto& e : explanations) {
    if (e.method != agg.method) {
      throw InvalidArgument("cannot aggregate LIME and SHAP explanations together");
    }
  }
  if (mode == ClassMode::kAllClasses && agg.method == Method::kLime && !explanations.empty()) {
    throw InvalidArgument("all-classes aggregation is only defined for SHAP");
  }
  for (const auto& e : explanations) {
    if (!Matches(filter, e.urbanicity)) continue;
    if (mode == ClassMode::kPredictedOnly) {
      if (e.relevance.size() != kNumFeatures) {
        throw InvalidArgument("explanation has the wrong number of features");
      }
      agg.mean.col(e.predicted_class) += e.relevance;
      ++agg.counts(e.predicted_class);
    } else {
      if (e.class_relevance.rows() != kNumFeatures || e.class_relevance.cols() != kNumClasses) {
        throw InvalidArgument("explanation lacks per-class contributions");
      }
      agg.mean += e.class_relevance;
      agg.counts.array() += 1;
    }
  }
  for (int c = 0; c < kNumClasses; ++c) {
    if (agg.counts(c) > 0) agg.mean.col(c) /= static_cast<double>(agg.counts(c));
  }
  return agg;
}

std::string FormatExplanationsJsonl(std::span<const Explanation> explanations) {
  std::string out;
  for (const auto& e : explanations) {
    nlohmann::json j = {
        {"tower_id", e.tower_id},
        {"method", MethodName(e.method)},
        {"output", e.output == OutputSpace::kMargin ? "margin" : "probability"},
        {"predicted_class", e.predicted_class},
        {"target_class", e.target_class},
        {"urbanicity", geo::UrbanicityName(e.urbanicity)},
        {"relevance", ToStd(e.relevance)},
        {"base_value", e.base_value ? nlohmann::json(*e.base_value) : nlohmann::json(nullptr)},
    };
    if (e.class_relevance.size() > 0) {
      nlohmann::json per_class = nlohmann::json::array();
      for (Index c = 0; c < e.class_relevance.cols(); ++c) {
        per_class.push_back(ToStd(e.class_relevance.col(c)));
      }
      j["class_relevance"] = std::move(per_class);
      j["class_base"] = ToStd(e.class_base);
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<Explanation> ParseExplanationsJsonl(std::string_view text) {
  std::vector<Explanation> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Explanation e;
      e.tower_id = j.at("tower_id").get<std::string>();
      e.method = ParseMethod(j.at("method").get<std::string>());
      e.output = j.value("output", "probability") == "margin" ? OutputSpace::kMargin
                                                              : OutputSpace::kProbability;
      e.predicted_class = j.at("predicted_class").get<int>();
      e.target_class = j.value("target_class", e.predicted_class);
      e.urbanicity = geo::ParseUrbanicity(j.at("urbanicity").get<std::string>());
      e.relevance = FromStd(j.at("relevance").get<std::vector<double>>());
      if (!j.at("base_value").is_null()) e.base_value = j["base_value"].get<double>();
      if (j.contains("class_relevance")) {
        const auto& per_class = j["class_relevance"];
        e.class_relevance.resize(e.relevance.size(), static_cast<Index>(per_class.size()));
        for (std::size_t c = 0; c < per_class.size(); ++c) {
          e.class_relevance.col(static_cast<Index>(c)) =
              FromStd(per_class[c].get<std::vector<double>>());
        }
        e.class_base = FromStd(j.at("class_base").get<std::vector<double>>());
      }
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw DataError("explanations line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return out;
}

std::string FormatAggregateCsv(const AggregateMatrix& aggregate) {
  std::vector<std::string> header = {"feature"};
  for (int c = 0; c < kNumClasses; ++c) header.push_back("class_" + std::to_string(c));
  std::string out = csv::JoinRow(header);
  for (int f = 0; f < kNumFeatures; ++f) {
    std::vector<std::string> row = {FeatureNames()[f]};
    for (int c = 0; c < kNumClasses; ++c) {
      row.push_back(aggregate.IsEmpty(c) ? "NA" : FormatDouble(aggregate.mean(f, c)));
    }
    out += csv::JoinRow(row);
  }
  return out;
}

}  // namespace elecxai::explain
