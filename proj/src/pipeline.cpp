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

#include "elecxai/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include "elecxai/csv.hpp"
#include "elecxai/dataset.hpp"
#include "elecxai/geo_io.hpp"
#include "elecxai/graph.hpp"
#include "elecxai/model_io.hpp"

namespace elecxai::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json PolygonJson(const geo::Polygon& p) {
  json rings = json::array();
  for (const auto& ring : p) {
    json r = json::array();
    for (const auto& v : ring) r.push_back({v.x(), v.y()});
    rings.push_back(std::move(r));
  }
  return rings;
}

geo::Polygon PolygonFrom(const json& j) {
  geo::Polygon p;
  for (const auto& r : j) {
    geo::Ring ring;
    for (const auto& v : r) ring.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    p.push_back(std::move(ring));
  }
  return p;
}

json MetricsJson(const models::Metrics& m) {
  auto optional = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  json confusion = json::array();
  for (int r = 0; r < kNumClasses; ++r) {
    json row = json::array();
    for (int c = 0; c < kNumClasses; ++c) row.push_back(m.confusion(r, c));
    confusion.push_back(std::move(row));
  }
  return {{"n", m.n},
          {"accuracy", m.accuracy},
          {"mae", m.mae},
          {"mae_ratio", m.mae_ratio},
          {"accuracy_urban", optional(m.accuracy_urban)},
          {"accuracy_rural", optional(m.accuracy_rural)},
          {"n_urban", m.n_urban},
          {"n_rural", m.n_rural},
          {"confusion", std::move(confusion)}};
}

json HistogramJson(const dataset::ClassCounts& counts) {
  return json(std::vector<long long>(counts.begin(), counts.end()));
}

dataset::PreparedData LoadPrepared(const Pipeline& p) {
  const auto table = dataset::ParseFeatureCsv(csv::ReadFile(p.Path(paths::kFeatures)));
  const auto splits = dataset::ParseSplitsCsv(csv::ReadFile(p.Path(paths::kSplits)));
  return dataset::ApplyAssignments(table, splits);
}

// Runs body(i) for i in [0, n) on `threads` workers. Results must be written
// to per-index slots so the outcome is independent of scheduling.
template <typename Body>
void ParallelFor(std::size_t n, int threads, Body body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view StageName(Stage s) {
  switch (s) {
    case Stage::kSynth:
      return "synth";
    case Stage::kGeo:
      return "geo";
    case Stage::kFeatures:
      return "features";
    case Stage::kTrain:
      return "train";
    case Stage::kExplain:
      return "explain";
    case Stage::kReport:
      return "report";
  }
  return "?";
}

Stage ParseStage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (StageName(s) == name) return s;
  }
  throw InvalidArgument("unknown stage '" + std::string(name) + "'");
}

MissingInputError::MissingInputError(fs::path path)
    : InvalidArgument("input file not found: " + path.string()), path_(std::move(path)) {}

StageError::StageError(Stage stage, const std::string& message)
    : Error("stage '" + std::string(StageName(stage)) + "' failed: " + message),
      stage_(stage) {}

void RunConfig::Validate() const {
  if (!seed) throw InvalidArgument("a seed is required");
  if (!(urban_threshold >= 0)) throw InvalidArgument("urban_threshold must be >= 0");
  if (models.empty()) throw InvalidArgument("at least one model is required");
  if (output_dir.empty()) throw InvalidArgument("output directory is empty");
  if (threads < 0) throw InvalidArgument("threads must be >= 0");
  if (!explainers.empty() &&
      std::find(models.begin(), models.end(), explain_model) == models.end()) {
    throw InvalidArgument("explain_model '" + std::string(models::ModelKindName(explain_model)) +
                          "' is not in the model list");
  }
  lime.Validate(kNumFeatures);
  if (mode == InputMode::kSynthetic) {
    synth.Validate();
    return;
  }
  for (const auto* p : {&files.sites, &files.communes, &files.boundary, &files.records}) {
    if (p->empty()) throw InvalidArgument("files mode needs sites, communes, boundary and records");
    if (!fs::exists(*p)) throw MissingInputError(*p);
  }
}

json SynthConfigToJson(const synth::SynthConfig& c) {
  json cities = json::array();
  for (const auto& city : c.density.cities) {
    cities.push_back({{"x", city.center.x()},
                      {"y", city.center.y()},
                      {"peak", city.peak},
                      {"radius", city.radius}});
  }
  return {{"n_towers", c.n_towers},
          {"n_communes", c.n_communes},
          {"boundary", c.boundary.empty() ? json(nullptr) : PolygonJson(c.boundary)},
          {"density", {{"west", c.density.west}, {"east", c.density.east}, {"cities", cities}}},
          {"sms_coupling", c.sms_coupling},
          {"call_coupling", c.call_coupling},
          {"min_separation_km", c.min_separation_km},
          {"noise_sigma", c.noise_sigma},
          {"volume_scale", c.volume_scale},
          {"softening_km", c.softening_km},
          {"minutes_per_call", c.minutes_per_call},
          {"household_size", c.household_size},
          {"rate_slope", c.rate_slope},
          {"rate_pivot", c.rate_pivot},
          {"rate_noise", c.rate_noise},
          {"grid_step_km", c.grid_step_km},
          {"ref_lon", c.ref_lon},
          {"ref_lat", c.ref_lat}};
}

synth::SynthConfig SynthConfigFromJson(const json& j) {
  auto c = synth::DefaultConfig();
  c.n_towers = j.value("n_towers", c.n_towers);
  c.n_communes = j.value("n_communes", c.n_communes);
  if (j.contains("boundary") && !j["boundary"].is_null()) c.boundary = PolygonFrom(j["boundary"]);
  if (j.contains("density")) {
    const auto& d = j["density"];
    c.density.west = d.value("west", c.density.west);
    c.density.east = d.value("east", c.density.east);
    if (d.contains("cities")) {
      c.density.cities.clear();
      for (const auto& city : d["cities"]) {
        c.density.cities.push_back({geo::Point(city.at("x").get<double>(), city.at("y").get<double>()),
                                    city.at("peak").get<double>(), city.at("radius").get<double>()});
      }
    }
  }
  c.sms_coupling = j.value("sms_coupling", c.sms_coupling);
  c.call_coupling = j.value("call_coupling", c.call_coupling);
  c.min_separation_km = j.value("min_separation_km", c.min_separation_km);
  c.noise_sigma = j.value("noise_sigma", c.noise_sigma);
  c.volume_scale = j.value("volume_scale", c.volume_scale);
  c.softening_km = j.value("softening_km", c.softening_km);
  c.minutes_per_call = j.value("minutes_per_call", c.minutes_per_call);
  c.household_size = j.value("household_size", c.household_size);
  c.rate_slope = j.value("rate_slope", c.rate_slope);
  c.rate_pivot = j.value("rate_pivot", c.rate_pivot);
  c.rate_noise = j.value("rate_noise", c.rate_noise);
  c.grid_step_km = j.value("grid_step_km", c.grid_step_km);
  c.ref_lon = j.value("ref_lon", c.ref_lon);
  c.ref_lat = j.value("ref_lat", c.ref_lat);
  return c;
}

json ConfigToJson(const RunConfig& config) {
  json model_list = json::array();
  for (auto k : config.models) model_list.push_back(models::ModelKindName(k));
  json explainer_list = json::array();
  for (auto m : config.explainers) explainer_list.push_back(explain::MethodName(m));
  json params = models::SpecToJson(config.model_defaults);
  params.erase("kind");
  params.erase("seed");
  json j = {{"mode", config.mode == InputMode::kSynthetic ? "synthetic" : "files"},
            {"seed", config.seed ? json(*config.seed) : json(nullptr)},
            {"urban_threshold", config.urban_threshold},
            {"models", model_list},
            {"explainers", explainer_list},
            {"explain_model", models::ModelKindName(config.explain_model)},
            {"output_dir", config.output_dir.generic_string()},
            {"lime",
             {{"n_samples", config.lime.n_samples},
              {"kernel_width", config.lime.kernel_width},
              {"top_d", config.lime.top_d},
              {"ridge_lambda", config.lime.ridge_lambda}}},
            {"model_params", params},
            {"threads", config.threads}};
  if (config.mode == InputMode::kSynthetic) {
    j["synth"] = SynthConfigToJson(config.synth);
  } else {
    j["files"] = {{"sites", config.files.sites.generic_string()},
                  {"communes", config.files.communes.generic_string()},
                  {"boundary", config.files.boundary.generic_string()},
                  {"records", config.files.records.generic_string()}};
  }
  return j;
}

RunConfig ConfigFromJson(const json& j, const fs::path& base_dir) {
  try {
    RunConfig c;
    const auto mode = j.value("mode", std::string("synthetic"));
    if (mode == "synthetic") {
      c.mode = InputMode::kSynthetic;
    } else if (mode == "files") {
      c.mode = InputMode::kFiles;
    } else {
      throw InvalidArgument("unknown input mode '" + mode + "'");
    }
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    c.urban_threshold = j.value("urban_threshold", c.urban_threshold);
    if (j.contains("models")) {
      c.models.clear();
      for (const auto& m : j["models"]) c.models.push_back(models::ParseModelKind(m.get<std::string>()));
    }
    if (j.contains("explainers")) {
      c.explainers.clear();
      for (const auto& m : j["explainers"]) c.explainers.push_back(explain::ParseMethod(m.get<std::string>()));
    }
    if (j.contains("explain_model")) {
      c.explain_model = models::ParseModelKind(j["explain_model"].get<std::string>());
    }
    auto resolve = [&](const std::string& p) {
      fs::path path(p);
      return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    if (j.contains("output_dir")) c.output_dir = resolve(j["output_dir"].get<std::string>());
    if (j.contains("synth")) c.synth = SynthConfigFromJson(j["synth"]);
    if (j.contains("files")) {
      const auto& f = j["files"];
      auto get = [&](const char* key) {
        return f.contains(key) ? resolve(f[key].get<std::string>()) : fs::path();
      };
      c.files = {get("sites"), get("communes"), get("boundary"), get("records")};
    }
    if (j.contains("lime")) {
      const auto& l = j["lime"];
      c.lime.n_samples = l.value("n_samples", c.lime.n_samples);
      c.lime.kernel_width = l.value("kernel_width", c.lime.kernel_width);
      c.lime.top_d = l.value("top_d", c.lime.top_d);
      c.lime.ridge_lambda = l.value("ridge_lambda", c.lime.ridge_lambda);
    }
    if (j.contains("model_params")) {
      json params = j["model_params"];
      params["kind"] = "rf";
      c.model_defaults = models::SpecFromJson(params);
    }
    c.threads = j.value("threads", c.threads);
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
}

RunConfig LoadConfig(const fs::path& path) {
  if (!fs::exists(path)) throw MissingInputError(path);
  const auto text = csv::ReadFile(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return ConfigFromJson(j, path.parent_path());
}

namespace paths {
std::string Model(models::ModelKind kind) {
  return std::string(kModelsDir) + "/" + std::string(models::ModelKindName(kind)) + ".json";
}
std::string Explanations(explain::Method method) {
  return method == explain::Method::kLime ? "explanations_lime.jsonl" : "explanations_shap.jsonl";
}
std::string AggregateCsv(explain::Method method, explain::ClassMode mode,
                         explain::PopulationFilter filter) {
  std::string name(explain::MethodName(method));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return std::string(kPlotsDir) + "/" + name + "_" + std::string(explain::ClassModeName(mode)) +
         "_" + std::string(explain::PopulationFilterName(filter)) + ".csv";
}
std::string ConfusionCsv(models::ModelKind kind) {
  return std::string(kPlotsDir) + "/confusion_" + std::string(models::ModelKindName(kind)) +
         ".csv";
}
}  // namespace paths

std::uint64_t ModelSeed(std::uint64_t seed, models::ModelKind kind) {
  return DeriveSeed(seed, "model:" + std::string(models::ModelKindName(kind)));
}

std::uint64_t LimeSeed(std::uint64_t seed) { return DeriveSeed(seed, "lime"); }

std::string FormatConfusionCsv(const models::ConfusionMatrix& confusion) {
  std::vector<std::string> header = {"true_class"};
  for (int c = 0; c < kNumClasses; ++c) header.push_back("pred_" + std::to_string(c));
  std::string out = csv::JoinRow(header);
  for (int r = 0; r < kNumClasses; ++r) {
    std::vector<std::string> row = {std::to_string(r)};
    for (int c = 0; c < kNumClasses; ++c) row.push_back(std::to_string(confusion(r, c)));
    out += csv::JoinRow(row);
  }
  return out;
}

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)) {
  config_.Validate();
  config_.synth.seed = *config_.seed;
  config_.lime.seed = LimeSeed(*config_.seed);
}

fs::path Pipeline::Path(std::string_view relative) const {
  return config_.output_dir / fs::path(std::string(relative));
}

void Pipeline::Write(std::string_view relative, std::string_view contents) {
  csv::WriteFile(Path(relative), contents);
}

InputFiles Pipeline::Inputs() const {
  if (config_.mode == InputMode::kFiles) return config_.files;
  return {Path(paths::kTowers), Path(paths::kCommunes), Path(paths::kBoundary),
          Path(paths::kRecords)};
}

void Pipeline::Run(Stage stage) {
  try {
    switch (stage) {
      case Stage::kSynth:
        Synth();
        break;
      case Stage::kGeo:
        Geo();
        break;
      case Stage::kFeatures:
        Features();
        break;
      case Stage::kTrain:
        Train();
        break;
      case Stage::kExplain:
        Explain();
        break;
      case Stage::kReport:
        Report();
        break;
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

void Pipeline::RunAll() {
  for (Stage s : kAllStages) {
    if (s == Stage::kSynth && config_.mode == InputMode::kFiles) continue;
    Run(s);
  }
}

void Pipeline::Synth() {
  if (config_.mode != InputMode::kSynthetic) {
    throw InvalidArgument("the synth stage needs synthetic input mode");
  }
  const auto world = synth::GenerateWorld(config_.synth);
  const auto records = synth::GenerateInteractions(world, config_.synth);
  Write(paths::kTowers, geo::FormatTowersCsv(synth::ExportTowers(world)));
  Write(paths::kCommunes, geo::FormatCommunesGeoJson(synth::ExportCommunes(world)));
  Write(paths::kBoundary, geo::FormatBoundaryGeoJson(synth::ExportBoundary(world)));
  Write(paths::kRecords, graph::FormatRecordsCsv(records));
}

void Pipeline::Geo() {
  const auto in = Inputs();
  const auto towers = geo::ParseTowersCsv(csv::ReadFile(in.sites));
  const auto boundary_lonlat = geo::ParseBoundaryGeoJson(csv::ReadFile(in.boundary));
  auto communes = geo::ParseCommunesGeoJson(csv::ReadFile(in.communes));
  const auto projection = geo::Projection::CenteredOn(boundary_lonlat);
  std::vector<geo::TowerSite> sites;
  sites.reserve(towers.size());
  for (const auto& t : towers) sites.push_back({t.tower_id, projection.Forward(t.lon, t.lat)});
  for (auto& c : communes) c.polygon = projection.Forward(c.polygon);
  auto cells = geo::ComputeVoronoi(sites, projection.Forward(boundary_lonlat));
  auto labeled = geo::LabelCells(std::move(cells), communes, config_.urban_threshold);
  if (!labeled.unlabeled.empty()) {
    std::cerr << "geo: " << labeled.unlabeled.size()
              << " cell(s) overlap no commune and are left unlabeled\n";
  }
  Write(paths::kCells, geo::FormatCellsCsv(labeled.labeled));
}

void Pipeline::Features() {
  const auto in = Inputs();
  const auto towers = geo::ParseTowersCsv(csv::ReadFile(in.sites));
  const auto records = graph::ParseRecordsCsv(csv::ReadFile(in.records));
  const auto labels = geo::ParseCellsCsv(csv::ReadFile(Path(paths::kCells)));
  std::vector<std::string> ids;
  ids.reserve(towers.size());
  for (const auto& t : towers) ids.push_back(t.tower_id);
  const graph::TowerRegistry registry(ids);
  std::array<graph::InteractionMatrix, 3> networks;
  for (std::size_t k = 0; k < kEventTypes.size(); ++k) {
    networks[k] = graph::BuildNetwork(records, kEventTypes[k], registry);
  }
  const auto table =
      dataset::BuildFeatureTable(ids, graph::ExtractFeatures(networks), labels);
  const auto prepared = dataset::Prepare(table, seed());
  Write(paths::kFeatures, dataset::FormatFeatureCsv(table));
  Write(paths::kSplits, dataset::FormatSplitsCsv(prepared.assignments));
}

void Pipeline::Train() {
  const auto data = LoadPrepared(*this);
  json per_model = json::object();
  for (auto kind : config_.models) {
    auto spec = config_.model_defaults;
    spec.kind = kind;
    spec.seed = ModelSeed(seed(), kind);
    const auto trained = models::Train(spec, data.model_train);
    Write(paths::Model(kind), models::SerializeModel(trained));
    const auto metrics = models::Evaluate(trained.model, data.model_test);
    per_model[std::string(models::ModelKindName(kind))] = MetricsJson(metrics);
    Write(paths::ConfusionCsv(kind), FormatConfusionCsv(metrics.confusion));
  }
  json doc = {{"n_train", data.model_train.size()},
              {"n_test", data.model_test.size()},
              {"majority_baseline", models::MajorityBaseline(data.model_test.label)},
              {"models", std::move(per_model)}};
  Write(paths::kMetrics, doc.dump(2) + "\n");
}

void Pipeline::Explain() {
  if (config_.explainers.empty()) return;
  const auto data = LoadPrepared(*this);
  const auto trained =
      models::DeserializeModel(csv::ReadFile(Path(paths::Model(config_.explain_model))));
  const auto& test = data.expl_test;
  const auto n = static_cast<std::size_t>(test.size());
  const int threads = config_.threads > 0
                          ? config_.threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  for (auto method : config_.explainers) {
    std::vector<explain::Explanation> out(n);
    if (method == explain::Method::kLime) {
      const auto background = explain::SummarizeBackground(data.expl_train.features);
      ParallelFor(n, threads, [&](std::size_t i) {
        const auto row = static_cast<Eigen::Index>(i);
        out[i] = explain::LimeExplain(trained.model, test.features.row(row).transpose(),
                                      background, config_.lime, test.tower_ids[i]);
      });
    } else {
      ParallelFor(n, threads, [&](std::size_t i) {
        const auto row = static_cast<Eigen::Index>(i);
        out[i] = explain::TreeShapExplain(trained.model, test.features.row(row).transpose(),
                                          std::nullopt, test.tower_ids[i]);
      });
    }
    for (std::size_t i = 0; i < n; ++i) out[i].urbanicity = test.urbanicity[i];
    Write(paths::Explanations(method), explain::FormatExplanationsJsonl(out));

    std::vector<explain::ClassMode> modes = {explain::ClassMode::kPredictedOnly};
    if (method == explain::Method::kShap) modes.push_back(explain::ClassMode::kAllClasses);
    for (auto mode : modes) {
      for (auto filter : {explain::PopulationFilter::kAll, explain::PopulationFilter::kUrban,
                          explain::PopulationFilter::kRural}) {
        Write(paths::AggregateCsv(method, mode, filter),
              explain::FormatAggregateCsv(explain::Aggregate(out, mode, filter)));
      }
    }
  }
}

void Pipeline::Report() {
  const auto table = dataset::ParseFeatureCsv(csv::ReadFile(Path(paths::kFeatures)));
  const auto data =
      dataset::ApplyAssignments(table, dataset::ParseSplitsCsv(csv::ReadFile(Path(paths::kSplits))));
  const auto metrics = json::parse(csv::ReadFile(Path(paths::kMetrics)));

  json model_seeds = json::object();
  json hyper = json::object();
  for (auto kind : config_.models) {
    auto spec = config_.model_defaults;
    spec.kind = kind;
    spec.seed = ModelSeed(seed(), kind);
    const auto name = std::string(models::ModelKindName(kind));
    model_seeds[name] = spec.seed;
    hyper[name] = models::SpecToJson(spec);
  }
  hyper["lime"] = {{"n_samples", config_.lime.n_samples},
                   {"kernel_width", config_.lime.kernel_width},
                   {"top_d", config_.lime.top_d},
                   {"ridge_lambda", config_.lime.ridge_lambda}};

  long long n_towers = -1;
  if (fs::exists(Inputs().sites)) {
    n_towers = static_cast<long long>(geo::ParseTowersCsv(csv::ReadFile(Inputs().sites)).size());
  }

  std::vector<std::string> candidates = {
      std::string(paths::kCells), std::string(paths::kFeatures), std::string(paths::kSplits),
      std::string(paths::kMetrics)};
  if (config_.mode == InputMode::kSynthetic) {
    for (auto p : {paths::kTowers, paths::kCommunes, paths::kBoundary, paths::kRecords}) {
      candidates.emplace_back(p);
    }
  }
  for (auto kind : config_.models) {
    candidates.push_back(paths::Model(kind));
    candidates.push_back(paths::ConfusionCsv(kind));
  }
  for (auto method : config_.explainers) {
    candidates.push_back(paths::Explanations(method));
    for (auto mode : {explain::ClassMode::kPredictedOnly, explain::ClassMode::kAllClasses}) {
      for (auto filter : {explain::PopulationFilter::kAll, explain::PopulationFilter::kUrban,
                          explain::PopulationFilter::kRural}) {
        candidates.push_back(paths::AggregateCsv(method, mode, filter));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  json artifacts = json::array();
  for (const auto& c : candidates) {
    if (fs::exists(Path(c))) artifacts.push_back(c);
  }
  artifacts.push_back(std::string(paths::kReport));

  // The output directory is left out so that runs into different
  // directories produce the same report.
  json config = ConfigToJson(config_);
  config.erase("output_dir");

  json report = {
      {"format", "elecxai-run-report"},
      {"version", 1},
      {"config", std::move(config)},
      {"seeds",
       {{"run", seed()},
        {"synth", config_.synth.seed},
        {"split_model", DeriveSeed(seed(), "split:model")},
        {"split_explanation", DeriveSeed(seed(), "split:explanation")},
        {"subsample", DeriveSeed(seed(), "subsample")},
        {"lime", config_.lime.seed},
        {"models", std::move(model_seeds)}}},
      {"hyperparameters", std::move(hyper)},
      {"n_towers", n_towers},
      {"n_labeled", table.size()},
      {"class_histogram", HistogramJson(table.CountClasses())},
      {"imbalance", table.Imbalance()},
      {"class_histogram_model_train", HistogramJson(data.model_train.CountClasses())},
      {"split_sizes",
       {{"model_train", data.model_train.size()},
        {"model_test", data.model_test.size()},
        {"expl_train", data.expl_train.size()},
        {"expl_test", data.expl_test.size()}}},
      {"majority_baseline", metrics.at("majority_baseline")},
      {"metrics", metrics.at("models")},
      {"artifacts", std::move(artifacts)}};
  Write(paths::kReport, report.dump(2) + "\n");
}

}  // namespace elecxai::pipeline
