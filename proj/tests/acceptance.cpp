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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptance [--keep <dir>]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "elecxai/csv.hpp"
#include "elecxai/explain.hpp"
#include "elecxai/geometry.hpp"
#include "elecxai/model_io.hpp"
#include "elecxai/pipeline.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace elecxai;

// Pinned tolerances and budgets.
constexpr double kShapOracleTol = 1e-9;
constexpr double kLocalAccuracyTol = 1e-6;
constexpr double kLimeOracleTol = 1e-8;
constexpr double kAreaSumRelTol = 1e-6;
constexpr double kRateFixtureTol = 1e-12;
constexpr double kMinLiftOverBaseline = 0.10;
constexpr double kShapOracleBudgetSec = 120;
constexpr double kLocalAccuracyBudgetSec = 60;
constexpr double kEndToEndBudgetSec = 600;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// 1. TreeSHAP equals brute-force Shapley on random trees.
Outcome ShapleyOracle() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(DeriveSeed(1, "acceptance:shap-oracle"));
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const int n_features = 1 + static_cast<int>(UniformIndex(rng, 8));
    const int depth = 1 + static_cast<int>(UniformIndex(rng, 4));
    const auto tree = testing::RandomTree(n_features, depth, 3, rng);
    const auto model = testing::Ensemble({tree}, {1.0}, n_features, 3);
    for (int i = 0; i < 20; ++i) {
      const auto x = testing::RandomPoint(n_features, rng);
      const Eigen::MatrixXd diff =
          explain::TreeShapValues(model, x) - explain::BruteForceShapley(model, x);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  const double secs = Seconds(start);
  return {worst <= kShapOracleTol && secs < kShapOracleBudgetSec,
          "50 trees x 20 inputs, max |diff| = " + Fmt(worst) + " (tol " + Fmt(kShapOracleTol) +
              "), " + Fmt(secs) + " s"};
}

// Builds the 300-tower synthetic table and trains a 100-tree forest on it.
struct SmallWorld {
  dataset::PreparedData data;
  models::TrainedModel rf;
};

SmallWorld BuildSmallWorld(const fs::path& dir) {
  pipeline::RunConfig c;
  c.seed = 300;
  c.output_dir = dir;
  c.synth.n_towers = 300;
  c.synth.n_communes = 80;
  c.models = {models::ModelKind::kRandomForest};
  c.explainers.clear();
  pipeline::Pipeline p(c);
  p.Run(pipeline::Stage::kSynth);
  p.Run(pipeline::Stage::kGeo);
  p.Run(pipeline::Stage::kFeatures);
  p.Run(pipeline::Stage::kTrain);
  SmallWorld w;
  const auto table = dataset::ParseFeatureCsv(csv::ReadFile(p.Path(pipeline::paths::kFeatures)));
  w.data = dataset::ApplyAssignments(
      table, dataset::ParseSplitsCsv(csv::ReadFile(p.Path(pipeline::paths::kSplits))));
  w.rf = models::DeserializeModel(
      csv::ReadFile(p.Path(pipeline::paths::Model(models::ModelKind::kRandomForest))));
  return w;
}

// 2. SHAP local accuracy on a 100-tree forest.
Outcome LocalAccuracy(const fs::path& dir) {
  const auto start = std::chrono::steady_clock::now();
  const auto w = BuildSmallWorld(dir);
  const auto& forest = std::get<models::TreeEnsembleModel>(w.rf.model);
  const auto& test = w.data.expl_test;
  double worst = 0;
  for (Eigen::Index i = 0; i < test.size(); ++i) {
    const Eigen::VectorXd x = test.features.row(i).transpose();
    const auto e = explain::TreeShapExplain(w.rf.model, x);
    const double p = models::PredictProba(w.rf.model, x)(e.predicted_class);
    worst = std::max(worst, std::abs(*e.base_value + e.relevance.sum() - p));
  }
  const double secs = Seconds(start);
  const bool ok = forest.trees.size() == 100 && w.data.model_train.size() + w.data.model_test.size() > 0 &&
                  test.size() > 0 && worst <= kLocalAccuracyTol && secs < kLocalAccuracyBudgetSec;
  return {ok, std::to_string(forest.trees.size()) + "-tree RF, " + std::to_string(test.size()) +
                  " explanation-test rows, max |base + sum - p| = " + Fmt(worst) + " (tol " +
                  Fmt(kLocalAccuracyTol) + "), " + Fmt(secs) + " s"};
}

// Closed-form weighted ridge on weighted-centred data.
Eigen::VectorXd RidgeOracle(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& w, double lambda) {
  const double total = w.sum();
  const Eigen::RowVectorXd xm = (w.transpose() * x) / total;
  const Eigen::MatrixXd xc = x.rowwise() - xm;
  const Eigen::VectorXd yc = y.array() - w.dot(y) / total;
  const Eigen::MatrixXd a = xc.transpose() * w.asDiagonal() * xc +
                            lambda * Eigen::MatrixXd::Identity(x.cols(), x.cols());
  return a.ldlt().solve(xc.transpose() * w.asDiagonal() * yc);
}

// 3. LIME surrogate equals the closed form, is sparse and deterministic.
Outcome LimeOracle(const fs::path& dir) {
  const auto w = BuildSmallWorld(dir);
  const auto background = explain::SummarizeBackground(w.data.expl_train.features);
  explain::LimeConfig cfg;
  cfg.seed = pipeline::LimeSeed(300);
  double worst = 0;
  long max_nonzero = 0;
  bool deterministic = true;
  const auto n = std::min<Eigen::Index>(10, w.data.expl_test.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = w.data.expl_test.features.row(i).transpose();
    const auto& id = w.data.expl_test.tower_ids[static_cast<std::size_t>(i)];
    explain::LimeTrace trace;
    const auto a = explain::LimeExplain(w.rf.model, x, background, cfg, id, &trace);
    const auto b = explain::LimeExplain(w.rf.model, x, background, cfg, id);
    const auto oracle = RidgeOracle(trace.design, trace.targets, trace.weights, cfg.ridge_lambda);
    worst = std::max(worst, (trace.fit.coefficients - oracle).cwiseAbs().maxCoeff());
    max_nonzero = std::max<long>(max_nonzero, (a.relevance.array() != 0).count());
    deterministic = deterministic && a.relevance == b.relevance && a.predicted_class == b.predicted_class;
  }
  return {worst <= kLimeOracleTol && max_nonzero <= 5 && deterministic && n > 0,
          std::to_string(n) + " instances, max |coef - closed form| = " + Fmt(worst) + " (tol " +
              Fmt(kLimeOracleTol) + "), max nonzeros = " + std::to_string(max_nonzero) +
              ", repeatable = " + (deterministic ? "yes" : "no")};
}

// 4. Voronoi partition and the 75/25 labelling fixture.
Outcome Geometry() {
  Rng rng(DeriveSeed(4, "acceptance:voronoi"));
  const auto boundary = testing::Rect(0, 0, 10, 7);
  const double boundary_area = geometry::Area(boundary);
  double worst = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + static_cast<int>(UniformIndex(rng, 200));
    std::uniform_real_distribution<double> ux(0.01, 9.99), uy(0.01, 6.99);
    std::vector<geo::TowerSite> sites;
    for (int i = 0; i < n; ++i) sites.push_back({"S" + std::to_string(i), geo::Point(ux(rng), uy(rng))});
    double total = 0;
    for (const auto& c : geo::ComputeVoronoi(sites, boundary)) total += c.area;
    worst = std::max(worst, std::abs(total - boundary_area) / boundary_area);
  }
  geo::VoronoiCell cell;
  cell.tower_id = "fixture";
  cell.polygon = testing::Rect(0, 0, 4, 1);
  cell.area = 4;
  const std::vector<geo::Commune> communes = {
      testing::MakeCommune("lit", testing::Rect(-1, -1, 3, 2), 50, 50, 100),
      testing::MakeCommune("dark", testing::Rect(3, -1, 6, 2), 40, 0, 100)};
  const double rate = geo::AreaWeightedRate(cell, communes);
  return {worst <= kAreaSumRelTol && std::abs(rate - 0.75) <= kRateFixtureTol,
          "5 site sets, max relative area gap = " + Fmt(worst) + " (tol " + Fmt(kAreaSumRelTol) +
              "); 75/25 fixture rate = " + std::to_string(rate) + " (|err| " +
              Fmt(std::abs(rate - 0.75)) + ")"};
}

// 5. Metrics fixture, reproduced exactly.
Outcome MetricsArithmetic() {
  const testing::MetricsFixture f;
  const auto m = models::ComputeMetrics(f.predicted, f.actual);
  models::ConfusionMatrix expected = models::ConfusionMatrix::Zero();
  for (const auto& [t, p, c] : f.cells) expected(t, p) += c;
  const bool ok = m.accuracy == f.accuracy && m.mae == f.mae && m.mae_ratio == f.mae_ratio &&
                  m.confusion == expected && models::kMaxAbsoluteError == 9.0;
  return {ok, "acc " + Fmt(m.accuracy) + ", MAE " + Fmt(m.mae) + ", MAE/9 " + Fmt(m.mae_ratio) +
                  ", confusion " + (m.confusion == expected ? "matches" : "differs")};
}

pipeline::RunConfig EndToEndConfig(const fs::path& out) {
  pipeline::RunConfig c;
  c.seed = 7;
  c.output_dir = out;
  return c;  // 500 towers, default generator with sms_coupling 3
}

// 6. Qualitative findings on the planted synthetic world.
Outcome EndToEnd(const fs::path& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto config = EndToEndConfig(out);
  pipeline::Pipeline(config).RunAll();
  const double secs = Seconds(start);

  const auto metrics = nlohmann::json::parse(csv::ReadFile(out / pipeline::paths::kMetrics));
  const auto& rf = metrics.at("models").at("rf");
  const double acc = rf.at("accuracy").get<double>();
  const double baseline = metrics.at("majority_baseline").get<double>();
  const bool a = acc - baseline >= kMinLiftOverBaseline;
  const bool has_groups = !rf.at("accuracy_urban").is_null() && !rf.at("accuracy_rural").is_null();
  const double acc_u = has_groups ? rf.at("accuracy_urban").get<double>() : 0;
  const double acc_r = has_groups ? rf.at("accuracy_rural").get<double>() : 0;
  const bool b = has_groups && acc_u > acc_r;

  const auto shap = explain::ParseExplanationsJsonl(
      csv::ReadFile(out / pipeline::paths::Explanations(explain::Method::kShap)));
  const auto agg = explain::Aggregate(shap, explain::ClassMode::kPredictedOnly,
                                      explain::PopulationFilter::kAll);
  bool c = true;
  int high_classes = 0;
  std::string tops;
  for (int k = 7; k < kNumClasses; ++k) {
    if (agg.IsEmpty(k)) continue;
    ++high_classes;
    std::vector<int> order(kNumFeatures);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
      return std::abs(agg.mean(i, k)) > std::abs(agg.mean(j, k));
    });
    int sn = 0;
    tops += " c" + std::to_string(k) + ":";
    for (int r = 0; r < 3; ++r) {
      sn += IsSmsFeature(order[static_cast<std::size_t>(r)]) ? 1 : 0;
      tops += (r ? "," : "") + FeatureNames()[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
    }
    c = c && sn >= 2;
  }
  c = c && high_classes > 0;

  // Top SN feature: largest mean |contribution| over all explained towers.
  int top_sn = -1;
  double best = -1;
  for (int j = 0; j < kNumFeatures; ++j) {
    if (!IsSmsFeature(j)) continue;
    double s = 0;
    for (const auto& e : shap) s += std::abs(e.relevance(j));
    if (s > best) {
      best = s;
      top_sn = j;
    }
  }
  double urban = 0, rural = 0;
  int n_urban = 0, n_rural = 0;
  for (const auto& e : shap) {
    const double v = std::abs(e.relevance(top_sn));
    if (e.urbanicity == geo::Urbanicity::kUrban) {
      urban += v;
      ++n_urban;
    } else {
      rural += v;
      ++n_rural;
    }
  }
  const bool d = n_urban > 0 && n_rural > 0 && urban / n_urban > rural / n_rural;
  const bool ok = a && b && c && d && secs < kEndToEndBudgetSec;

  auto mark = [](bool v) { return v ? "ok" : "FAIL"; };
  return {ok, std::string("(a) ") + mark(a) + " acc " + Fmt(acc) + " vs baseline " + Fmt(baseline) +
                  "; (b) " + mark(b) + " urban " + Fmt(acc_u) + " > rural " + Fmt(acc_r) +
                  "; (c) " + mark(c) + tops + "; (d) " + mark(d) + " " +
                  FeatureNames()[static_cast<std::size_t>(top_sn)] + " urban " +
                  Fmt(n_urban ? urban / n_urban : 0) + " > rural " +
                  Fmt(n_rural ? rural / n_rural : 0) + "; " + Fmt(secs) + " s"};
}

// 7. A second run with the same config and seed is byte-identical.
Outcome Determinism(const fs::path& first, const fs::path& second) {
  pipeline::Pipeline(EndToEndConfig(second)).RunAll();
  std::vector<std::string> compared;
  compared.emplace_back(pipeline::paths::kFeatures);
  compared.emplace_back(pipeline::paths::kSplits);
  for (const auto& dir : {pipeline::paths::kModelsDir, pipeline::paths::kPlotsDir}) {
    for (const auto& entry : fs::directory_iterator(first / dir)) {
      compared.push_back(fs::relative(entry.path(), first).generic_string());
    }
  }
  compared.push_back(pipeline::paths::Explanations(explain::Method::kLime));
  compared.push_back(pipeline::paths::Explanations(explain::Method::kShap));
  compared.emplace_back(pipeline::paths::kReport);
  std::sort(compared.begin(), compared.end());
  std::vector<std::string> differing;
  for (const auto& rel : compared) {
    if (!fs::exists(second / rel) || csv::ReadFile(first / rel) != csv::ReadFile(second / rel)) {
      differing.push_back(rel);
    }
  }
  std::string detail = std::to_string(compared.size()) + " artifacts compared, " +
                       std::to_string(differing.size()) + " differ";
  for (const auto& d : differing) detail += " " + d;
  return {differing.empty() && compared.size() > 5, detail};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path root;
  bool keep = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--keep" && i + 1 < argc) {
      root = argv[++i];
      keep = true;
    }
  }
  if (root.empty()) {
    root = fs::temp_directory_path() / ("elecxai_acceptance_" + std::to_string(::getpid()));
  }
  fs::remove_all(root);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 shapley-oracle", ShapleyOracle},
      {"2 shap-local-accuracy", [&] { return LocalAccuracy(root / "small_a"); }},
      {"3 lime-oracle", [&] { return LimeOracle(root / "small_b"); }},
      {"4 geometry", Geometry},
      {"5 metrics-arithmetic", MetricsArithmetic},
      {"6 end-to-end", [&] { return EndToEnd(root / "run_a"); }},
      {"7 determinism", [&] { return Determinism(root / "run_a", root / "run_b"); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  if (!keep) fs::remove_all(root);
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
