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

#include "elecxai/graph.hpp"

#include <deque>

#include "elecxai/csv.hpp"

namespace elecxai::graph {
namespace {

using Adjacency = std::vector<std::vector<Eigen::Index>>;

Adjacency OutgoingSupport(const Eigen::MatrixXd& w) {
  const Eigen::Index n = w.rows();
  Adjacency adj(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && w(i, j) > 0) adj[i].push_back(j);
    }
  }
  return adj;
}

double Closeness(const Adjacency& adj, Eigen::Index source) {
  const auto n = static_cast<Eigen::Index>(adj.size());
  std::vector<int> dist(n, -1);
  std::deque<Eigen::Index> queue = {source};
  dist[source] = 0;
  long long reachable = 0;
  long long total = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto v : adj[u]) {
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      ++reachable;
      total += dist[v];
      queue.push_back(v);
    }
  }
  if (reachable == 0) return 0.0;
  const double r = static_cast<double>(reachable);
  return (r / static_cast<double>(n - 1)) * (r / static_cast<double>(total));
}

void RequireNodes(const InteractionMatrix& m, Eigen::Index i) {
  if (m.weights.rows() < 2) {
    throw InvalidArgument("centrality needs at least 2 towers");
  }
  if (i < 0 || i >= m.weights.rows()) {
    throw InvalidArgument("tower index out of range");
  }
}

}  // namespace

UnknownTowerError::UnknownTowerError(std::size_t record_index, std::string tower_id)
    : DataError("record " + std::to_string(record_index) +
                " references unknown tower '" + tower_id + "'"),
      record_index_(record_index),
      tower_id_(std::move(tower_id)) {}

TowerRegistry::TowerRegistry(std::vector<std::string> ids) : ids_(std::move(ids)) {
  for (std::size_t k = 0; k < ids_.size(); ++k) {
    if (!index_.emplace(ids_[k], k).second) {
      throw InvalidArgument("duplicate tower id " + ids_[k]);
    }
  }
}

std::ptrdiff_t TowerRegistry::Find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

InteractionMatrix BuildNetwork(std::span<const InteractionRecord> records,
                               EventType event_type,
                               const TowerRegistry& registry) {
  const auto n = static_cast<Eigen::Index>(registry.size());
  InteractionMatrix m{event_type, registry, Eigen::MatrixXd::Zero(n, n)};
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    const auto from = registry.Find(r.from_tower);
    if (from < 0) throw UnknownTowerError(k, r.from_tower);
    const auto to = registry.Find(r.to_tower);
    if (to < 0) throw UnknownTowerError(k, r.to_tower);
    if (r.event_type != event_type) continue;
    if (!(r.count >= 0)) {
      throw DataError("record " + std::to_string(k) + " has a negative count");
    }
    m.weights(from, to) += r.count;
  }
  return m;
}

double DegreeCentrality(const InteractionMatrix& m, Eigen::Index i) {
  RequireNodes(m, i);
  const auto& w = m.weights;
  const Eigen::Index n = w.rows();
  int linked = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j != i && (w(i, j) > 0 || w(j, i) > 0)) ++linked;
  }
  return static_cast<double>(linked) / static_cast<double>(n - 1);
}

double ClosenessCentrality(const InteractionMatrix& m, Eigen::Index i) {
  RequireNodes(m, i);
  return Closeness(OutgoingSupport(m.weights), i);
}

Eigen::MatrixXd NetworkFeatures(const InteractionMatrix& m) {
  const auto& w = m.weights;
  const Eigen::Index n = w.rows();
  if (n < 2) throw InvalidArgument("feature extraction needs at least 2 towers");
  const Eigen::VectorXd diag = w.diagonal();
  const Eigen::VectorXd out = w.rowwise().sum() - diag;
  const Eigen::VectorXd in = w.colwise().sum().transpose() - diag;
  const auto adj = OutgoingSupport(w);

  Eigen::MatrixXd f(n, kFeaturesPerNetwork);
  for (Eigen::Index i = 0; i < n; ++i) {
    f(i, 0) = diag(i);
    f(i, 1) = out(i);
    f(i, 2) = in(i);
    f(i, 3) = DegreeCentrality(m, i);
    f(i, 4) = Closeness(adj, i);
    f(i, 5) = (out(i) + 1.0) / (in(i) + 1.0);
  }
  return f;
}

Eigen::MatrixXd ExtractFeatures(const std::array<InteractionMatrix, 3>& networks) {
  for (std::size_t k = 0; k < networks.size(); ++k) {
    if (networks[k].event_type != kEventTypes[k]) {
      throw InvalidArgument("networks must be ordered CN, CL, SN");
    }
    if (!(networks[k].registry == networks[0].registry)) {
      throw InvalidArgument("networks are built over different tower registries");
    }
  }
  const auto n = static_cast<Eigen::Index>(networks[0].registry.size());
  Eigen::MatrixXd features(n, kNumFeatures);
  for (std::size_t k = 0; k < networks.size(); ++k) {
    features.middleCols(static_cast<Eigen::Index>(k) * kFeaturesPerNetwork,
                        kFeaturesPerNetwork) = NetworkFeatures(networks[k]);
  }
  return features;
}

std::vector<InteractionRecord> ParseRecordsCsv(std::string_view text) {
  const auto table = csv::Parse(text, "records");
  const auto from = table.Column("from_tower");
  const auto to = table.Column("to_tower");
  const auto type = table.Column("event_type");
  const auto count = table.Column("count");
  std::vector<InteractionRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    out.push_back({row[from], row[to], ParseEventType(row[type]),
                   csv::ToDouble(row[count], "records.count")});
  }
  return out;
}

std::string FormatRecordsCsv(std::span<const InteractionRecord> records) {
  std::string out = "from_tower,to_tower,event_type,count\n";
  for (const auto& r : records) {
    out += csv::JoinRow({r.from_tower, r.to_tower,
                         std::string(EventTypeCode(r.event_type)),
                         FormatDouble(r.count)});
  }
  return out;
}

}  // namespace elecxai::graph
