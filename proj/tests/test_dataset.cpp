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
#include <set>

#include <gtest/gtest.h>

#include "elecxai/dataset.hpp"

namespace elecxai::dataset {
namespace {

// One row per entry of `classes`; the rate sits in the middle of the bin and
// feature 0 stores the row number so membership changes are traceable.
FeatureTable TableWithClasses(const std::vector<int>& classes) {
  FeatureTable t;
  const auto n = static_cast<Eigen::Index>(classes.size());
  t.features = Eigen::MatrixXd::Zero(n, kNumFeatures);
  t.rate.resize(n);
  t.label.resize(n);
  t.density.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t.tower_ids.push_back("T" + std::to_string(i));
    t.features(i, 0) = static_cast<double>(i);
    t.features(i, 1) = 0.5 * static_cast<double>(i);
    t.rate(i) = 0.1 * classes[static_cast<std::size_t>(i)] + 0.05;
    t.label(i) = classes[static_cast<std::size_t>(i)];
    t.density(i) = 100.0 * static_cast<double>(i % 30);
    t.urbanicity.push_back(t.density(i) > 1000 ? geo::Urbanicity::kUrban : geo::Urbanicity::kRural);
  }
  return t;
}

FeatureTable TableOfSize(int n) {
  std::vector<int> classes;
  for (int i = 0; i < n; ++i) classes.push_back(i % kNumClasses);
  return TableWithClasses(classes);
}

TEST(BinLabel, Examples) {
  EXPECT_EQ(BinLabel(0.1), 1);
  EXPECT_EQ(BinLabel(1.0), 9);
  EXPECT_EQ(BinLabel(0.0), 0);
  EXPECT_EQ(BinLabel(0.95), 9);
  EXPECT_EQ(BinLabel(0.8999999), 8);
  EXPECT_THROW(BinLabel(-0.01), InvalidArgument);
  EXPECT_THROW(BinLabel(1.01), InvalidArgument);
}

TEST(BinLabel, MonotoneWithIntervalPreimages) {
  int previous = 0;
  std::vector<double> first_rate(kNumClasses, -1);
  for (int k = 0; k <= 100000; ++k) {
    const double r = k / 100000.0;
    const int c = BinLabel(r);
    ASSERT_GE(c, previous);
    ASSERT_LE(c - previous, 1);  // no class is skipped, so preimages are intervals
    if (first_rate[static_cast<std::size_t>(c)] < 0) first_rate[static_cast<std::size_t>(c)] = r;
    previous = c;
  }
  for (int c = 0; c < kNumClasses; ++c) EXPECT_NEAR(first_rate[static_cast<std::size_t>(c)], 0.1 * c, 1e-9);
}

TEST(SubsampleMajority, ReducesClassNineToMean) {
  std::vector<int> classes;
  for (int c = 0; c < 9; ++c) classes.insert(classes.end(), 10, c);
  classes.insert(classes.end(), 110, 9);
  const auto table = TableWithClasses(classes);
  const auto sub = SubsampleMajority(table, 42);
  const auto counts = sub.CountClasses();
  for (int c = 0; c < 9; ++c) EXPECT_EQ(counts[static_cast<std::size_t>(c)], 10);
  EXPECT_EQ(counts[9], 20);
  // Row order and feature values are untouched.
  for (Eigen::Index i = 0; i < sub.size(); ++i) {
    const auto original = static_cast<Eigen::Index>(sub.features(i, 0));
    EXPECT_EQ(sub.tower_ids[static_cast<std::size_t>(i)], table.tower_ids[static_cast<std::size_t>(original)]);
    EXPECT_EQ(sub.features.row(i), table.features.row(original));
    if (i > 0) {
      EXPECT_LT(sub.features(i - 1, 0), sub.features(i, 0));
    }
  }
}

TEST(SubsampleMajority, NoOpWhenBalanced) {
  const auto table = TableOfSize(50);
  const auto sub = SubsampleMajority(table, 1);
  EXPECT_EQ(sub.tower_ids, table.tower_ids);
}

TEST(SubsampleMajority, Deterministic) {
  std::vector<int> classes(30, 9);
  classes.insert(classes.end(), {0, 1, 2});
  const auto table = TableWithClasses(classes);
  EXPECT_EQ(SubsampleMajority(table, 5).tower_ids, SubsampleMajority(table, 5).tower_ids);
  EXPECT_NE(SubsampleMajority(table, 5).tower_ids, SubsampleMajority(table, 6).tower_ids);
}

TEST(Split, SizesAndDeterminism) {
  auto [a, b] = Split(TableOfSize(100), 0.7, 3);
  EXPECT_EQ(a.size(), 70);
  EXPECT_EQ(b.size(), 30);
  const auto t10 = TableOfSize(10);
  EXPECT_EQ(Split(t10, 0.7, 9).first.tower_ids, Split(t10, 0.7, 9).first.tower_ids);
}

TEST(Split, PartitionsTheInput) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(UniformIndex(rng, 200));
    const auto t = TableOfSize(n);
    auto [a, b] = Split(t, 0.7, rng());
    std::set<std::string> seen(a.tower_ids.begin(), a.tower_ids.end());
    for (const auto& id : b.tower_ids) EXPECT_TRUE(seen.insert(id).second);
    EXPECT_EQ(static_cast<int>(seen.size()), n);
    EXPECT_EQ(a.size(), std::llround(0.7 * n));
  }
}

TEST(Prepare, TwoStageSizesAtFullScale) {
  const auto table = TableOfSize(1587);
  const auto data = Prepare(table, 17);
  EXPECT_EQ(data.model_test.size(), 476);
  EXPECT_EQ(data.expl_train.size(), 333);
  EXPECT_EQ(data.expl_test.size(), 143);
  // Class 9 is not over-represented here, so nothing is dropped.
  EXPECT_EQ(data.model_train.size(), 1111);
  EXPECT_EQ(data.assignments.size(), 1587u);
}

TEST(Prepare, SubsamplesOnlyTheTrainingPart) {
  std::vector<int> classes(400, 9);
  for (int i = 0; i < 200; ++i) classes.push_back(i % 9);
  const auto table = TableWithClasses(classes);
  const auto data = Prepare(table, 8);
  EXPECT_EQ(data.model_test.size(), 180);
  EXPECT_LT(data.model_train.CountClasses()[9], 100);
  const long long dropped = std::count_if(data.assignments.begin(), data.assignments.end(),
                                          [](const auto& a) { return a.second == SplitTag::kModelTrainDropped; });
  EXPECT_EQ(dropped + data.model_train.size(), 420);
  // Saved tags rebuild the same partition.
  const auto again = ApplyAssignments(table, data.assignments);
  EXPECT_EQ(again.model_train.tower_ids, data.model_train.tower_ids);
  EXPECT_EQ(again.expl_test.tower_ids, data.expl_test.tower_ids);
  EXPECT_EQ(again.model_test.tower_ids, data.model_test.tower_ids);
}

TEST(FeatureTable, ImbalanceStatistic) {
  std::vector<int> classes = {9, 9, 9, 1, 2, 3, 4, 5, 6};
  EXPECT_DOUBLE_EQ(TableWithClasses(classes).Imbalance(), 1.0 / 3.0);
}

TEST(BuildFeatureTable, DropsUnlabeledTowers) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Random(3, kNumFeatures);
  std::vector<geo::CellLabel> labels = {{"b", 0.35, 10, 2000, geo::Urbanicity::kUrban},
                                        {"a", 1.0, 5, 50, geo::Urbanicity::kRural}};
  const auto t = BuildFeatureTable({"a", "b", "c"}, f, labels);
  ASSERT_EQ(t.size(), 2);
  EXPECT_EQ(t.tower_ids, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(t.label(0), 9);
  EXPECT_EQ(t.label(1), 3);
  EXPECT_EQ(t.features.row(1), f.row(1));
  EXPECT_EQ(t.urbanicity[1], geo::Urbanicity::kUrban);
}

TEST(FeatureCsv, RoundTripIsExact) {
  auto t = TableOfSize(12);
  t.features(3, 7) = 0.1 + 0.2;
  t.features(4, 17) = 1e-300;
  const auto text = FormatFeatureCsv(t);
  const std::string header = text.substr(0, text.find('\n'));
  EXPECT_EQ(header.substr(0, 30), "tower_id,cn_te,cn_out,cn_in,cn");
  EXPECT_NE(header.find("sn_ratio,rate,class,density,urbanicity"), std::string::npos);
  const auto back = ParseFeatureCsv(text);
  EXPECT_EQ(back.tower_ids, t.tower_ids);
  EXPECT_EQ(back.features, t.features);
  EXPECT_EQ(back.rate, t.rate);
  EXPECT_EQ(back.label, t.label);
  EXPECT_EQ(FormatFeatureCsv(back), text);
}

TEST(SplitsCsv, RoundTrip) {
  std::vector<std::pair<std::string, SplitTag>> a = {{"x", SplitTag::kModelTrain},
                                                     {"y", SplitTag::kExplTest},
                                                     {"z", SplitTag::kModelTrainDropped}};
  const auto text = FormatSplitsCsv(a);
  EXPECT_EQ(text.substr(0, text.find('\n')), "tower_id,split_tag");
  EXPECT_EQ(ParseSplitsCsv(text), a);
}

}  // namespace
}  // namespace elecxai::dataset
