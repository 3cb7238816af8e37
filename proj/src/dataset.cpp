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

#include "elecxai/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "elecxai/csv.hpp"

namespace elecxai::dataset {
namespace {

std::vector<Eigen::Index> Permutation(Eigen::Index n, Rng& rng) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = idx.size(); i > 1; --i) {
    const auto j = UniformIndex(rng, i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

}  // namespace

FeatureTable FeatureTable::Select(std::span<const Eigen::Index> rows) const {
  FeatureTable out;
  const auto n = static_cast<Eigen::Index>(rows.size());
  out.features.resize(n, features.cols());
  out.rate.resize(n);
  out.label.resize(n);
  out.density.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto r = rows[static_cast<std::size_t>(k)];
    out.tower_ids.push_back(tower_ids[static_cast<std::size_t>(r)]);
    out.features.row(k) = features.row(r);
    out.rate(k) = rate(r);
    out.label(k) = label(r);
    out.density(k) = density(r);
    out.urbanicity.push_back(urbanicity[static_cast<std::size_t>(r)]);
  }
  return out;
}

ClassCounts FeatureTable::CountClasses() const {
  ClassCounts counts{};
  for (Eigen::Index i = 0; i < label.size(); ++i) ++counts[label(i)];
  return counts;
}

double FeatureTable::Imbalance() const {
  if (size() == 0) return 0.0;
  return static_cast<double>(CountClasses()[kNumClasses - 1]) /
         static_cast<double>(size());
}

void FeatureTable::Validate() const {
  const auto n = size();
  if (features.rows() != n || features.cols() != kNumFeatures || rate.size() != n ||
      label.size() != n || density.size() != n ||
      static_cast<Eigen::Index>(urbanicity.size()) != n) {
    throw InvalidArgument("feature table columns have inconsistent sizes");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (label(i) != BinLabel(rate(i))) {
      throw InvalidArgument("label of tower " + tower_ids[i] + " does not match its rate");
    }
  }
}

int BinLabel(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw InvalidArgument("electrification rate outside [0, 1]: " + FormatDouble(rate));
  }
  return std::min(static_cast<int>(std::floor(10.0 * rate)), kNumClasses - 1);
}

FeatureTable BuildFeatureTable(const std::vector<std::string>& tower_ids,
                               const Eigen::MatrixXd& features,
                               std::span<const geo::CellLabel> labels) {
  if (static_cast<Eigen::Index>(tower_ids.size()) != features.rows() ||
      features.cols() != kNumFeatures) {
    throw InvalidArgument("feature matrix does not match the tower list");
  }
  std::unordered_map<std::string, const geo::CellLabel*> by_id;
  for (const auto& l : labels) by_id[l.tower_id] = &l;
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < tower_ids.size(); ++i) {
    if (by_id.count(tower_ids[i])) keep.push_back(static_cast<Eigen::Index>(i));
  }
  FeatureTable t;
  const auto n = static_cast<Eigen::Index>(keep.size());
  t.features.resize(n, kNumFeatures);
  t.rate.resize(n);
  t.label.resize(n);
  t.density.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& id = tower_ids[static_cast<std::size_t>(keep[k])];
    const auto* l = by_id.at(id);
    t.tower_ids.push_back(id);
    t.features.row(k) = features.row(keep[k]);
    t.rate(k) = l->rate;
    t.label(k) = BinLabel(l->rate);
    t.density(k) = l->density;
    t.urbanicity.push_back(l->urbanicity);
  }
  return t;
}

FeatureTable SubsampleMajority(const FeatureTable& table, std::uint64_t seed) {
  const auto counts = table.CountClasses();
  const double total = static_cast<double>(table.size());
  const auto target = std::llround(total / kNumClasses);
  const long long majority = counts[kNumClasses - 1];
  if (majority <= target) return table;

  std::vector<Eigen::Index> majority_rows;
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    if (table.label(i) == kNumClasses - 1) majority_rows.push_back(i);
  }
  Rng rng(seed);
  // Partial Fisher-Yates: the first `target` entries form the sample.
  for (long long i = 0; i < target; ++i) {
    const auto j = static_cast<std::size_t>(i) +
                   UniformIndex(rng, majority_rows.size() - static_cast<std::size_t>(i));
    std::swap(majority_rows[static_cast<std::size_t>(i)], majority_rows[j]);
  }
  std::vector<char> keep(static_cast<std::size_t>(table.size()), 1);
  for (std::size_t i = static_cast<std::size_t>(target); i < majority_rows.size(); ++i) {
    keep[static_cast<std::size_t>(majority_rows[i])] = 0;
  }
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    if (keep[static_cast<std::size_t>(i)]) rows.push_back(i);
  }
  return table.Select(rows);
}

std::pair<FeatureTable, FeatureTable> Split(const FeatureTable& table, double ratio,
                                            std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("split ratio must be in (0, 1)");
  Rng rng(seed);
  auto perm = Permutation(table.size(), rng);
  const auto n_a = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(table.size())));
  std::vector<Eigen::Index> a(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_a));
  std::vector<Eigen::Index> b(perm.begin() + static_cast<std::ptrdiff_t>(n_a), perm.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return {table.Select(a), table.Select(b)};
}

std::string_view SplitTagName(SplitTag tag) {
  switch (tag) {
    case SplitTag::kModelTrain:
      return "model_train";
    case SplitTag::kModelTrainDropped:
      return "model_train_dropped";
    case SplitTag::kExplTrain:
      return "expl_train";
    case SplitTag::kExplTest:
      return "expl_test";
  }
  return "?";
}

SplitTag ParseSplitTag(std::string_view name) {
  for (auto tag : {SplitTag::kModelTrain, SplitTag::kModelTrainDropped,
                   SplitTag::kExplTrain, SplitTag::kExplTest}) {
    if (SplitTagName(tag) == name) return tag;
  }
  throw DataError("unknown split tag '" + std::string(name) + "'");
}

PreparedData Prepare(const FeatureTable& table, std::uint64_t seed) {
  PreparedData data;
  auto [train, test] = Split(table, kSplitRatio, DeriveSeed(seed, "split:model"));
  auto [expl_train, expl_test] = Split(test, kSplitRatio, DeriveSeed(seed, "split:explanation"));
  data.model_train = SubsampleMajority(train, DeriveSeed(seed, "subsample"));
  data.model_test = std::move(test);
  data.expl_train = std::move(expl_train);
  data.expl_test = std::move(expl_test);

  std::unordered_map<std::string, SplitTag> tags;
  for (const auto& id : train.tower_ids) tags[id] = SplitTag::kModelTrainDropped;
  for (const auto& id : data.model_train.tower_ids) tags[id] = SplitTag::kModelTrain;
  for (const auto& id : data.expl_train.tower_ids) tags[id] = SplitTag::kExplTrain;
  for (const auto& id : data.expl_test.tower_ids) tags[id] = SplitTag::kExplTest;
  for (const auto& id : table.tower_ids) data.assignments.emplace_back(id, tags.at(id));
  return data;
}

PreparedData ApplyAssignments(
    const FeatureTable& table,
    const std::vector<std::pair<std::string, SplitTag>>& assignments) {
  std::unordered_map<std::string, SplitTag> tags(assignments.begin(), assignments.end());
  std::vector<Eigen::Index> train, expl_train, expl_test, test;
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    const auto it = tags.find(table.tower_ids[static_cast<std::size_t>(i)]);
    if (it == tags.end()) {
      throw DataError("tower " + table.tower_ids[static_cast<std::size_t>(i)] +
                      " has no split assignment");
    }
    switch (it->second) {
      case SplitTag::kModelTrain:
        train.push_back(i);
        break;
      case SplitTag::kModelTrainDropped:
        break;
      case SplitTag::kExplTrain:
        expl_train.push_back(i);
        test.push_back(i);
        break;
      case SplitTag::kExplTest:
        expl_test.push_back(i);
        test.push_back(i);
        break;
    }
  }
  PreparedData data;
  data.model_train = table.Select(train);
  data.model_test = table.Select(test);
  data.expl_train = table.Select(expl_train);
  data.expl_test = table.Select(expl_test);
  data.assignments = assignments;
  return data;
}

std::string FormatFeatureCsv(const FeatureTable& table) {
  std::vector<std::string> header = {"tower_id"};
  for (const auto& name : FeatureNames()) header.push_back(name);
  for (const char* extra : {"rate", "class", "density", "urbanicity"}) header.emplace_back(extra);
  std::string out = csv::JoinRow(header);
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    std::vector<std::string> row = {table.tower_ids[static_cast<std::size_t>(i)]};
    for (int f = 0; f < kNumFeatures; ++f) row.push_back(FormatDouble(table.features(i, f)));
    row.push_back(FormatDouble(table.rate(i)));
    row.push_back(std::to_string(table.label(i)));
    row.push_back(FormatDouble(table.density(i)));
    row.emplace_back(geo::UrbanicityName(table.urbanicity[static_cast<std::size_t>(i)]));
    out += csv::JoinRow(row);
  }
  return out;
}

FeatureTable ParseFeatureCsv(std::string_view text) {
  const auto csv_table = csv::Parse(text, "features");
  std::array<std::size_t, kNumFeatures> cols{};
  for (int f = 0; f < kNumFeatures; ++f) cols[f] = csv_table.Column(FeatureNames()[f]);
  const auto id = csv_table.Column("tower_id");
  const auto rate = csv_table.Column("rate");
  const auto cls = csv_table.Column("class");
  const auto dens = csv_table.Column("density");
  const auto urb = csv_table.Column("urbanicity");
  FeatureTable t;
  const auto n = static_cast<Eigen::Index>(csv_table.rows.size());
  t.features.resize(n, kNumFeatures);
  t.rate.resize(n);
  t.label.resize(n);
  t.density.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = csv_table.rows[static_cast<std::size_t>(i)];
    t.tower_ids.push_back(row[id]);
    for (int f = 0; f < kNumFeatures; ++f) {
      t.features(i, f) = csv::ToDouble(row[cols[f]], FeatureNames()[f]);
    }
    t.rate(i) = csv::ToDouble(row[rate], "rate");
    t.label(i) = static_cast<int>(csv::ToInt(row[cls], "class"));
    t.density(i) = csv::ToDouble(row[dens], "density");
    t.urbanicity.push_back(geo::ParseUrbanicity(row[urb]));
  }
  t.Validate();
  return t;
}

std::string FormatSplitsCsv(const std::vector<std::pair<std::string, SplitTag>>& assignments) {
  std::string out = "tower_id,split_tag\n";
  for (const auto& [id, tag] : assignments) {
    out += csv::JoinRow({id, std::string(SplitTagName(tag))});
  }
  return out;
}

std::vector<std::pair<std::string, SplitTag>> ParseSplitsCsv(std::string_view text) {
  const auto table = csv::Parse(text, "splits");
  const auto id = table.Column("tower_id");
  const auto tag = table.Column("split_tag");
  std::vector<std::pair<std::string, SplitTag>> out;
  for (const auto& row : table.rows) out.emplace_back(row[id], ParseSplitTag(row[tag]));
  return out;
}

}  // namespace elecxai::dataset
