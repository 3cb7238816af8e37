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

#include <random>

#include <gtest/gtest.h>

#include "elecxai/model_io.hpp"
#include "elecxai/models.hpp"
#include "test_util.hpp"

namespace elecxai::models {
namespace {

using testing::PlantedTable;

std::span<const int> Span(const std::vector<int>& v) { return {v.data(), v.size()}; }

DecisionTree Leaf(const Eigen::VectorXd& v, double cover = 1) {
  DecisionTree t;
  t.nodes.push_back({-1, 0, -1, -1, cover, v});
  return t;
}

DecisionTree Stump(int feature, double threshold, const Eigen::VectorXd& left,
                   const Eigen::VectorXd& right) {
  DecisionTree t;
  t.nodes.push_back({feature, threshold, 1, 2, 2, {}});
  t.nodes.push_back({-1, 0, -1, -1, 1, left});
  t.nodes.push_back({-1, 0, -1, -1, 1, right});
  return t;
}

Eigen::VectorXd OneHot(int k) { return Eigen::VectorXd::Unit(kNumClasses, k); }

TreeEnsembleModel Forest(std::vector<DecisionTree> trees) {
  TreeEnsembleModel m;
  const auto n = trees.size();
  m.trees = std::move(trees);
  m.tree_weights.assign(n, 1.0 / static_cast<double>(n));
  m.offset = Eigen::VectorXd::Zero(kNumClasses);
  m.n_features = kNumFeatures;
  return m;
}

ModelSpec SpecFor(ModelKind kind, std::uint64_t seed = 1) {
  ModelSpec s;
  s.kind = kind;
  s.seed = seed;
  return s;
}

constexpr ModelKind kAllKinds[] = {ModelKind::kDecisionTree, ModelKind::kRandomForest,
                                   ModelKind::kGradientBoostedTrees,
                                   ModelKind::kLogisticRegression,
                                   ModelKind::kGaussianNaiveBayes};

// --- prediction on hand-built trees ---------------------------------------

TEST(PredictProba, SingleLeafReturnsLeafVector) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kNumClasses);
  v(2) = 0.25;
  v(7) = 0.75;
  const Model m = Forest({Leaf(v)});
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(PredictProba(m, testing::RandomPoint(kNumFeatures, rng)), v);
  }
  EXPECT_EQ(Predict(m, Eigen::VectorXd::Zero(kNumFeatures)), 7);
}

TEST(PredictProba, IdenticalTreesAverageToOneTree) {
  const auto stump = Stump(3, 0.5, OneHot(1), 0.5 * (OneHot(4) + OneHot(6)));
  const Model one = Forest({stump});
  const Model many = Forest({stump, stump, stump, stump, stump});
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto x = testing::RandomPoint(kNumFeatures, rng);
    EXPECT_TRUE(PredictProba(one, x).isApprox(PredictProba(many, x), 1e-15));
  }
}

TEST(PredictProba, DepthOneTreeGoesLeftOnEquality) {
  const Model m = Forest({Stump(3, 0.5, OneHot(1), OneHot(8))});
  Eigen::VectorXd x = Eigen::VectorXd::Zero(kNumFeatures);
  x(3) = 0.2;
  EXPECT_EQ(PredictProba(m, x), OneHot(1));
  x(3) = 0.5;
  EXPECT_EQ(PredictProba(m, x), OneHot(1));
  x(3) = 0.51;
  EXPECT_EQ(PredictProba(m, x), OneHot(8));
}

TEST(PredictProba, TiesGoToLowerClass) {
  const Model m = Forest({Leaf(0.5 * (OneHot(3) + OneHot(6)))});
  EXPECT_EQ(Predict(m, Eigen::VectorXd::Zero(kNumFeatures)), 3);
}

// --- training ----------------------------------------------------------------

TEST(Train, DecisionTreeFitsSeparableData) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd x(60, kNumFeatures);
  Eigen::VectorXi y(60);
  for (int i = 0; i < 60; ++i) {
    for (int j = 0; j < kNumFeatures; ++j) x(i, j) = u(rng);
    y(i) = x(i, 5) + 0.3 * x(i, 2) > 0 ? 7 : 2;
  }
  const auto dt = Train(SpecFor(ModelKind::kDecisionTree), x, y);
  EXPECT_EQ(PredictRows(dt.model, x), y);
}

TEST(Train, RandomForestIsDeterministicAndHasHundredTrees) {
  const auto table = PlantedTable(150, 4);
  const auto holdout = PlantedTable(50, 5);
  const auto a = Train(SpecFor(ModelKind::kRandomForest, 9), table);
  const auto b = Train(SpecFor(ModelKind::kRandomForest, 9), table);
  EXPECT_EQ(std::get<TreeEnsembleModel>(a.model).trees.size(), 100u);
  EXPECT_EQ(PredictProbaRows(a.model, holdout.features), PredictProbaRows(b.model, holdout.features));
  const auto c = Train(SpecFor(ModelKind::kRandomForest, 10), table);
  EXPECT_NE(PredictProbaRows(a.model, holdout.features), PredictProbaRows(c.model, holdout.features));
}

TEST(Train, RandomForestBeatsMajorityBaseline) {
  const auto train = PlantedTable(200, 6);
  const auto test = PlantedTable(200, 7);
  const auto rf = Train(SpecFor(ModelKind::kRandomForest), train);
  const auto m = Evaluate(rf.model, test);
  EXPECT_GT(m.accuracy, MajorityBaseline(test.label) + 0.1);
}

TEST(Train, EveryFamilyProducesDistributions) {
  const auto train = PlantedTable(200, 11);
  const auto test = PlantedTable(40, 12);
  for (auto kind : kAllKinds) {
    const auto model = Train(SpecFor(kind), train);
    const auto p = PredictProbaRows(model.model, test.features);
    ASSERT_EQ(p.cols(), kNumClasses) << ModelKindName(kind);
    EXPECT_TRUE((p.array() >= 0).all()) << ModelKindName(kind);
    EXPECT_TRUE(((p.rowwise().sum().array() - 1.0).abs() < 1e-9).all()) << ModelKindName(kind);
    const auto m = Evaluate(model.model, test);
    EXPECT_GT(m.accuracy, MajorityBaseline(test.label)) << ModelKindName(kind);
  }
}

TEST(Train, ForestLeavesAreDistributions) {
  const auto rf = Train(SpecFor(ModelKind::kRandomForest), PlantedTable(120, 2));
  for (const auto& tree : std::get<TreeEnsembleModel>(rf.model).trees) {
    for (const auto& node : tree.nodes) {
      if (node.IsLeaf()) {
        EXPECT_NEAR(node.value.sum(), 1.0, 1e-9);
      }
    }
  }
}

TEST(Train, LogisticRegressionConverges) {
  const auto lr = Train(SpecFor(ModelKind::kLogisticRegression), PlantedTable(150, 13));
  const auto& m = std::get<LogisticModel>(lr.model);
  EXPECT_LT(m.gradient_norm, 1e-6);
  EXPECT_LT(m.iterations, lr.spec.max_iterations);
}

TEST(Train, GradientBoostingUsesSoftmaxMargins) {
  const auto gbt = Train(SpecFor(ModelKind::kGradientBoostedTrees), PlantedTable(150, 14));
  const auto& e = std::get<TreeEnsembleModel>(gbt.model);
  EXPECT_EQ(e.link, OutputLink::kSoftmax);
  EXPECT_EQ(e.trees.size(), 100u * kNumClasses);
  for (const auto& t : e.trees) EXPECT_LE(t.Depth(), 6);
}

TEST(Train, RejectsDegenerateInput) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, kNumFeatures);
  Eigen::VectorXi y = Eigen::VectorXi::Constant(5, 4);
  for (auto kind : kAllKinds) EXPECT_THROW(Train(SpecFor(kind), x, y), InvalidArgument);
  EXPECT_THROW(Train(SpecFor(ModelKind::kDecisionTree), Eigen::MatrixXd(0, kNumFeatures),
                     Eigen::VectorXi(0)),
               InvalidArgument);
  y(0) = 10;
  EXPECT_THROW(Train(SpecFor(ModelKind::kDecisionTree), x, y), InvalidArgument);
}

TEST(RandomForest, RemovingATreeIsLipschitz) {
  const auto rf = Train(SpecFor(ModelKind::kRandomForest), PlantedTable(100, 15));
  const auto& full = std::get<TreeEnsembleModel>(rf.model);
  auto reduced = full;
  reduced.trees.pop_back();
  const double t = static_cast<double>(full.trees.size());
  reduced.tree_weights.assign(reduced.trees.size(), 1.0 / (t - 1));
  Rng rng(16);
  for (int i = 0; i < 30; ++i) {
    const Eigen::VectorXd x = testing::RandomPoint(kNumFeatures, rng) * 4.0 - Eigen::VectorXd::Constant(kNumFeatures, 2.0);
    // |mean_T - mean_{T-1}| = |v_T - mean_{T-1}| / T <= 1 / T for leaves in [0, 1].
    const double diff = (full.PredictProba(x) - reduced.PredictProba(x)).cwiseAbs().maxCoeff();
    EXPECT_LE(diff, 1.0 / t + 1e-12);
  }
}

TEST(NaiveBayes, ArgmaxInvariantUnderUniformPriorShift) {
  const auto nb = Train(SpecFor(ModelKind::kGaussianNaiveBayes), PlantedTable(200, 17));
  auto shifted = std::get<NaiveBayesModel>(nb.model);
  // Multiplying every prior by the same factor is a constant log shift.
  shifted.log_prior.array() += std::log(3.7);
  const auto test = PlantedTable(60, 18);
  EXPECT_EQ(PredictRows(nb.model, test.features), PredictRows(Model(shifted), test.features));
  const auto p = PredictProbaRows(nb.model, test.features);
  const auto q = PredictProbaRows(Model(shifted), test.features);
  EXPECT_TRUE(p.isApprox(q, 1e-12));
}

TEST(NaiveBayes, ConstantFeatureUsesVarianceFloor) {
  auto table = PlantedTable(100, 19);
  table.features.col(4).setConstant(2.0);
  const auto nb = Train(SpecFor(ModelKind::kGaussianNaiveBayes), table);
  const auto& m = std::get<NaiveBayesModel>(nb.model);
  EXPECT_TRUE((m.variance.col(4).array() == 1e-9).all());
  const auto p = PredictProba(nb.model, table.features.row(0).transpose());
  EXPECT_TRUE(p.allFinite());
}

// --- metrics -----------------------------------------------------------------

TEST(Metrics, TwoPredictionExample) {
  const std::vector<int> pred = {9, 9}, actual = {0, 9};
  const auto m = ComputeMetrics(Span(pred), Span(actual));
  EXPECT_EQ(m.accuracy, 0.5);
  EXPECT_EQ(m.mae, 4.5);
  EXPECT_EQ(m.mae_ratio, 0.5);
}

TEST(Metrics, PerfectPredictions) {
  const std::vector<int> v = {0, 3, 3, 9, 5};
  const auto m = ComputeMetrics(Span(v), Span(v));
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.mae, 0.0);
}

TEST(Metrics, TwentyPredictionFixture) {
  const testing::MetricsFixture f;
  const auto m = ComputeMetrics(Span(f.predicted), Span(f.actual));
  EXPECT_EQ(m.n, 20);
  EXPECT_EQ(m.accuracy, f.accuracy);
  EXPECT_EQ(m.mae, f.mae);
  EXPECT_EQ(m.mae_ratio, f.mae_ratio);
  ConfusionMatrix expected = ConfusionMatrix::Zero();
  for (const auto& [t, p, c] : f.cells) expected(t, p) += c;
  EXPECT_EQ(m.confusion, expected);
  EXPECT_EQ(static_cast<double>(m.confusion.trace()) / 20.0, m.accuracy);
}

TEST(Metrics, RandomPredictionInvariants) {
  Rng rng(20);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 1 + UniformIndex(rng, 50);
    std::vector<int> p, a;
    for (std::uint64_t i = 0; i < n; ++i) {
      p.push_back(static_cast<int>(UniformIndex(rng, kNumClasses)));
      a.push_back(static_cast<int>(UniformIndex(rng, kNumClasses)));
    }
    const auto m = ComputeMetrics(Span(p), Span(a));
    EXPECT_LE(m.mae, 9.0);
    EXPECT_GE(m.mae_ratio, 0.0);
    EXPECT_LE(m.mae_ratio, 1.0);
    EXPECT_EQ(static_cast<double>(m.confusion.trace()) / static_cast<double>(n), m.accuracy);
    // Row sums are class supports.
    for (int c = 0; c < kNumClasses; ++c) {
      EXPECT_EQ(m.confusion.row(c).sum(), std::count(a.begin(), a.end(), c));
    }
  }
}

TEST(Metrics, RejectsMismatchedInput) {
  const std::vector<int> p = {1, 2}, a = {1};
  EXPECT_THROW(ComputeMetrics(Span(p), Span(a)), InvalidArgument);
}

TEST(Disaggregated, UrbanRightRuralWrong) {
  using geo::Urbanicity;
  const std::vector<int> p = {1, 2, 3, 4}, a = {1, 2, 0, 0};
  const std::vector<Urbanicity> u = {Urbanicity::kUrban, Urbanicity::kUrban, Urbanicity::kRural,
                                     Urbanicity::kRural};
  const auto d = ComputeDisaggregated(Span(p), Span(a), u);
  EXPECT_EQ(d.urban, 1.0);
  EXPECT_EQ(d.rural, 0.0);
  EXPECT_EQ(d.n_urban, 2);
  EXPECT_EQ(d.n_rural, 2);
}

TEST(Disaggregated, EmptyGroupIsUndefined) {
  using geo::Urbanicity;
  const std::vector<int> p = {1, 2, 3}, a = {1, 2, 0};
  const std::vector<Urbanicity> u(3, Urbanicity::kUrban);
  const auto d = ComputeDisaggregated(Span(p), Span(a), u);
  ASSERT_TRUE(d.urban.has_value());
  EXPECT_DOUBLE_EQ(*d.urban, 2.0 / 3.0);
  EXPECT_FALSE(d.rural.has_value());
  EXPECT_EQ(d.n_rural, 0);
}

TEST(MajorityBaseline, MostFrequentShare) {
  Eigen::VectorXi labels(5);
  labels << 3, 9, 9, 1, 9;
  EXPECT_DOUBLE_EQ(MajorityBaseline(labels), 0.6);
}

// --- serialization -------------------------------------------------------------

TEST(ModelIo, RoundTripIsBitExact) {
  const auto train = PlantedTable(120, 21);
  const auto test = PlantedTable(30, 22);
  for (auto kind : kAllKinds) {
    const auto model = Train(SpecFor(kind, 5), train);
    const auto text = SerializeModel(model);
    const auto back = DeserializeModel(text);
    EXPECT_EQ(back.spec.kind, kind);
    EXPECT_EQ(back.spec.seed, 5u);
    EXPECT_EQ(PredictProbaRows(back.model, test.features), PredictProbaRows(model.model, test.features))
        << ModelKindName(kind);
    EXPECT_EQ(SerializeModel(back), text) << ModelKindName(kind);
  }
}

TEST(ModelIo, RejectsMalformedDocuments) {
  EXPECT_THROW(DeserializeModel("{"), DataError);
  EXPECT_THROW(DeserializeModel(R"({"format":"something-else"})"), DataError);
}

}  // namespace
}  // namespace elecxai::models
