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

#include "elecxai/model_io.hpp"

namespace elecxai::models {
namespace {

using nlohmann::json;
using Index = Eigen::Index;

json VectorJson(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd VectorFrom(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
}

json IntVectorJson(const Eigen::VectorXi& v) {
  return json(std::vector<int>(v.data(), v.data() + v.size()));
}

Eigen::VectorXi IntVectorFrom(const json& j) {
  const auto values = j.get<std::vector<int>>();
  return Eigen::Map<const Eigen::VectorXi>(values.data(), static_cast<Index>(values.size()));
}

json MatrixJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) rows.push_back(VectorJson(m.row(r).transpose()));
  return rows;
}

Eigen::MatrixXd MatrixFrom(const json& j, Index cols) {
  Eigen::MatrixXd m(static_cast<Index>(j.size()), cols);
  for (Index r = 0; r < m.rows(); ++r) {
    const auto row = VectorFrom(j.at(static_cast<std::size_t>(r)));
    if (row.size() != cols) throw DataError("model matrix row has wrong length");
    m.row(r) = row.transpose();
  }
  return m;
}

json TreeJson(const DecisionTree& tree) {
  json feature = json::array(), threshold = json::array(), left = json::array(),
       right = json::array(), cover = json::array(), value = json::array();
  for (const auto& n : tree.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    cover.push_back(n.cover);
    value.push_back(n.IsLeaf() ? VectorJson(n.value) : json(nullptr));
  }
  return {{"feature", feature}, {"threshold", threshold}, {"left", left},
          {"right", right},     {"cover", cover},         {"value", value}};
}

DecisionTree TreeFrom(const json& j) {
  DecisionTree tree;
  const auto& feature = j.at("feature");
  const std::size_t n = feature.size();
  for (const char* key : {"threshold", "left", "right", "cover", "value"}) {
    if (j.at(key).size() != n) throw DataError(std::string("tree array '") + key + "' has wrong length");
  }
  tree.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = tree.nodes[i];
    node.feature = feature[i].get<int>();
    node.threshold = j["threshold"][i].get<double>();
    node.left = j["left"][i].get<int>();
    node.right = j["right"][i].get<int>();
    node.cover = j["cover"][i].get<double>();
    if (!j["value"][i].is_null()) node.value = VectorFrom(j["value"][i]);
  }
  return tree;
}

}  // namespace

json SpecToJson(const ModelSpec& s) {
  return {{"kind", ModelKindName(s.kind)},
          {"seed", s.seed},
          {"n_trees", s.n_trees},
          {"max_features", s.max_features},
          {"boosting_rounds", s.boosting_rounds},
          {"learning_rate", s.learning_rate},
          {"max_depth", s.max_depth},
          {"lambda", s.lambda},
          {"min_child_weight", s.min_child_weight},
          {"inverse_regularization", s.inverse_regularization},
          {"gradient_tolerance", s.gradient_tolerance},
          {"max_iterations", s.max_iterations},
          {"variance_floor", s.variance_floor}};
}

ModelSpec SpecFromJson(const json& j) {
  ModelSpec s;
  s.kind = ParseModelKind(j.at("kind").get<std::string>());
  s.seed = j.value("seed", s.seed);
  s.n_trees = j.value("n_trees", s.n_trees);
  s.max_features = j.value("max_features", s.max_features);
  s.boosting_rounds = j.value("boosting_rounds", s.boosting_rounds);
  s.learning_rate = j.value("learning_rate", s.learning_rate);
  s.max_depth = j.value("max_depth", s.max_depth);
  s.lambda = j.value("lambda", s.lambda);
  s.min_child_weight = j.value("min_child_weight", s.min_child_weight);
  s.inverse_regularization = j.value("inverse_regularization", s.inverse_regularization);
  s.gradient_tolerance = j.value("gradient_tolerance", s.gradient_tolerance);
  s.max_iterations = j.value("max_iterations", s.max_iterations);
  s.variance_floor = j.value("variance_floor", s.variance_floor);
  return s;
}

json ModelToJson(const TrainedModel& trained) {
  json doc = {{"format", "elecxai-model"},
              {"version", kModelFormatVersion},
              {"n_classes", kNumClasses},
              {"spec", SpecToJson(trained.spec)}};
  if (const auto* e = std::get_if<TreeEnsembleModel>(&trained.model)) {
    json trees = json::array();
    for (const auto& t : e->trees) trees.push_back(TreeJson(t));
    doc["family"] = "tree_ensemble";
    doc["n_features"] = e->n_features;
    doc["link"] = e->link == OutputLink::kSoftmax ? "softmax" : "identity";
    doc["offset"] = VectorJson(e->offset);
    doc["tree_weights"] = e->tree_weights;
    doc["trees"] = std::move(trees);
  } else if (const auto* l = std::get_if<LogisticModel>(&trained.model)) {
    doc["family"] = "logistic";
    doc["n_features"] = l->mean.size();
    doc["classes"] = IntVectorJson(l->classes);
    doc["weights"] = MatrixJson(l->weights);
    doc["bias"] = VectorJson(l->bias);
    doc["mean"] = VectorJson(l->mean);
    doc["scale"] = VectorJson(l->scale);
    doc["iterations"] = l->iterations;
    doc["gradient_norm"] = l->gradient_norm;
  } else {
    const auto& b = std::get<NaiveBayesModel>(trained.model);
    doc["family"] = "gaussian_naive_bayes";
    doc["n_features"] = b.mean.cols();
    doc["classes"] = IntVectorJson(b.classes);
    doc["log_prior"] = VectorJson(b.log_prior);
    doc["mean"] = MatrixJson(b.mean);
    doc["variance"] = MatrixJson(b.variance);
  }
  return doc;
}

TrainedModel ModelFromJson(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "elecxai-model") {
      throw DataError("not an elecxai model document");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("unsupported model format version " + std::to_string(version));
    }
    TrainedModel out;
    out.spec = SpecFromJson(j.at("spec"));
    const auto family = j.at("family").get<std::string>();
    const auto n_features = j.at("n_features").get<Index>();
    if (family == "tree_ensemble") {
      TreeEnsembleModel e;
      e.n_features = static_cast<int>(n_features);
      e.link = j.at("link").get<std::string>() == "softmax" ? OutputLink::kSoftmax
                                                             : OutputLink::kIdentity;
      e.offset = VectorFrom(j.at("offset"));
      e.tree_weights = j.at("tree_weights").get<std::vector<double>>();
      for (const auto& t : j.at("trees")) e.trees.push_back(TreeFrom(t));
      e.Validate();
      out.model = std::move(e);
    } else if (family == "logistic") {
      LogisticModel l;
      l.classes = IntVectorFrom(j.at("classes"));
      l.weights = MatrixFrom(j.at("weights"), n_features);
      l.bias = VectorFrom(j.at("bias"));
      l.mean = VectorFrom(j.at("mean"));
      l.scale = VectorFrom(j.at("scale"));
      l.iterations = j.value("iterations", 0);
      l.gradient_norm = j.value("gradient_norm", 0.0);
      out.model = std::move(l);
    } else if (family == "gaussian_naive_bayes") {
      NaiveBayesModel b;
      b.classes = IntVectorFrom(j.at("classes"));
      b.log_prior = VectorFrom(j.at("log_prior"));
      b.mean = MatrixFrom(j.at("mean"), n_features);
      b.variance = MatrixFrom(j.at("variance"), n_features);
      out.model = std::move(b);
    } else {
      throw DataError("unknown model family " + family);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  }
}

std::string SerializeModel(const TrainedModel& model) {
  return ModelToJson(model).dump() + "\n";
}

TrainedModel DeserializeModel(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model file is not JSON: ") + e.what());
  }
  return ModelFromJson(j);
}

}  // namespace elecxai::models
