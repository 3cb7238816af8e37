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

// Batch orchestration. Each stage reads and writes files under the output
// directory only, so any stage can be re-run on its own.

#ifndef ELECXAI_PIPELINE_HPP_
#define ELECXAI_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "elecxai/explain.hpp"
#include "elecxai/models.hpp"
#include "elecxai/synth.hpp"

namespace elecxai::pipeline {

enum class InputMode { kSynthetic, kFiles };

enum class Stage { kSynth, kGeo, kFeatures, kTrain, kExplain, kReport };
inline constexpr Stage kAllStages[] = {Stage::kSynth,   Stage::kGeo,     Stage::kFeatures,
                                       Stage::kTrain,   Stage::kExplain, Stage::kReport};
std::string_view StageName(Stage s);
Stage ParseStage(std::string_view name);

struct InputFiles {
  std::filesystem::path sites;     // towers CSV
  std::filesystem::path communes;  // GeoJSON
  std::filesystem::path boundary;  // GeoJSON
  std::filesystem::path records;   // interaction CSV
};

struct RunConfig {
  InputMode mode = InputMode::kSynthetic;
  std::optional<std::uint64_t> seed;  // mandatory before running
  double urban_threshold = geo::kDefaultUrbanThreshold;
  std::vector<models::ModelKind> models = {
      models::ModelKind::kDecisionTree, models::ModelKind::kRandomForest,
      models::ModelKind::kGradientBoostedTrees, models::ModelKind::kLogisticRegression,
      models::ModelKind::kGaussianNaiveBayes};
  std::vector<explain::Method> explainers = {explain::Method::kLime, explain::Method::kShap};
  models::ModelKind explain_model = models::ModelKind::kRandomForest;
  std::filesystem::path output_dir = "elecxai_out";
  synth::SynthConfig synth = synth::DefaultConfig();
  InputFiles files;
  explain::LimeConfig lime;   // seed is derived from the run seed
  models::ModelSpec model_defaults;
  int threads = 0;            // 0: hardware concurrency

  // Throws InvalidArgument on inconsistent settings and MissingInputError
  // for absent files-mode inputs.
  void Validate() const;
};

// A files-mode input that does not exist.
class MissingInputError : public InvalidArgument {
 public:
  explicit MissingInputError(std::filesystem::path path);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Failure inside a stage; the original message is kept.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& message);
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

nlohmann::json SynthConfigToJson(const synth::SynthConfig& c);
synth::SynthConfig SynthConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const RunConfig& config);
// Missing keys keep their defaults; relative file paths resolve against
// `base_dir`.
RunConfig ConfigFromJson(const nlohmann::json& j,
                         const std::filesystem::path& base_dir = {});
RunConfig LoadConfig(const std::filesystem::path& path);

// Artifact locations relative to the output directory.
namespace paths {
inline constexpr std::string_view kTowers = "input/towers.csv";
inline constexpr std::string_view kCommunes = "input/communes.geojson";
inline constexpr std::string_view kBoundary = "input/boundary.geojson";
inline constexpr std::string_view kRecords = "input/records.csv";
inline constexpr std::string_view kCells = "cells.csv";
inline constexpr std::string_view kFeatures = "features.csv";
inline constexpr std::string_view kSplits = "splits.csv";
inline constexpr std::string_view kMetrics = "metrics.json";
inline constexpr std::string_view kModelsDir = "models";
inline constexpr std::string_view kPlotsDir = "plots";
inline constexpr std::string_view kReport = "run_report.json";
std::string Model(models::ModelKind kind);
std::string Explanations(explain::Method method);
std::string AggregateCsv(explain::Method method, explain::ClassMode mode,
                         explain::PopulationFilter filter);
std::string ConfusionCsv(models::ModelKind kind);
}  // namespace paths

// Seeds every randomized step derives from the run seed.
std::uint64_t ModelSeed(std::uint64_t seed, models::ModelKind kind);
std::uint64_t LimeSeed(std::uint64_t seed);

// Confusion matrix as CSV: header `true_class,pred_0..pred_9`.
std::string FormatConfusionCsv(const models::ConfusionMatrix& confusion);

class Pipeline {
 public:
  explicit Pipeline(RunConfig config);

  const RunConfig& config() const { return config_; }
  std::filesystem::path Path(std::string_view relative) const;

  // Runs one stage; failures are rethrown as StageError.
  void Run(Stage stage);
  // All stages in order; files mode skips synth.
  void RunAll();

  void Synth();
  void Geo();
  void Features();
  void Train();
  void Explain();
  void Report();

 private:
  std::uint64_t seed() const { return *config_.seed; }
  InputFiles Inputs() const;
  void Write(std::string_view relative, std::string_view contents);

  RunConfig config_;
};

}  // namespace elecxai::pipeline

#endif  // ELECXAI_PIPELINE_HPP_
