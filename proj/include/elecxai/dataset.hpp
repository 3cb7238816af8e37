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

#ifndef ELECXAI_DATASET_HPP_
#define ELECXAI_DATASET_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "elecxai/common.hpp"
#include "elecxai/geo.hpp"
#include "elecxai/geo_io.hpp"

namespace elecxai::dataset {

using ClassCounts = std::array<long long, kNumClasses>;

// One row per labeled tower.
struct FeatureTable {
  std::vector<std::string> tower_ids;
  Eigen::MatrixXd features;  // N x kNumFeatures
  Eigen::VectorXd rate;
  Eigen::VectorXi label;
  Eigen::VectorXd density;
  std::vector<geo::Urbanicity> urbanicity;

  Eigen::Index size() const { return static_cast<Eigen::Index>(tower_ids.size()); }
  FeatureTable Select(std::span<const Eigen::Index> rows) const;
  ClassCounts CountClasses() const;
  // Share of class 9 rows.
  double Imbalance() const;
  void Validate() const;
};

// min(floor(10 * rate), 9); rates outside [0, 1] are rejected.
int BinLabel(double rate);

// Joins network features (rows in `tower_ids` order) with cell labels.
// Towers without a label are dropped.
FeatureTable BuildFeatureTable(const std::vector<std::string>& tower_ids,
                               const Eigen::MatrixXd& features,
                               std::span<const geo::CellLabel> labels);

// Reduces class 9 to round(mean class count), sampling without replacement.
// A no-op when class 9 is already at or below that mean.
FeatureTable SubsampleMajority(const FeatureTable& table, std::uint64_t seed);

// Uniform random partition; the first part has round(ratio * N) rows. Both
// parts keep the input row order.
std::pair<FeatureTable, FeatureTable> Split(const FeatureTable& table,
                                            double ratio, std::uint64_t seed);

enum class SplitTag { kModelTrain, kModelTrainDropped, kExplTrain, kExplTest };
std::string_view SplitTagName(SplitTag tag);
SplitTag ParseSplitTag(std::string_view name);

// Two-stage 7:3 / 7:3 partition with class-9 subsampling of the model
// training part. model_test = expl_train + expl_test.
struct PreparedData {
  FeatureTable model_train;
  FeatureTable model_test;
  FeatureTable expl_train;
  FeatureTable expl_test;
  std::vector<std::pair<std::string, SplitTag>> assignments;
};

inline constexpr double kSplitRatio = 0.7;

PreparedData Prepare(const FeatureTable& table, std::uint64_t seed);

// Rebuilds the partition from a saved assignment list.
PreparedData ApplyAssignments(
    const FeatureTable& table,
    const std::vector<std::pair<std::string, SplitTag>>& assignments);

std::string FormatFeatureCsv(const FeatureTable& table);
FeatureTable ParseFeatureCsv(std::string_view text);

std::string FormatSplitsCsv(
    const std::vector<std::pair<std::string, SplitTag>>& assignments);
std::vector<std::pair<std::string, SplitTag>> ParseSplitsCsv(std::string_view text);

}  // namespace elecxai::dataset

#endif  // ELECXAI_DATASET_HPP_
